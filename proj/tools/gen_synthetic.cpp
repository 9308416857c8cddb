#include "lsmc/io.hpp"
#include "lsmc/synthetic.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

// Writes a bundled book's four input files and a config.ini into a directory.
int main(int argc, char** argv) {
    const std::string which = argc == 3 ? argv[2] : "reference";
    if ((argc != 2 && argc != 3) || (which != "reference" && which != "toy")) {
        std::cerr << "usage: gen_synthetic <output-dir> [reference|toy]\n";
        return 8;
    }
    try {
        const std::filesystem::path dir = argv[1];
        std::filesystem::create_directories(dir);
        const auto book = which == "toy" ? lsmc::toy_book() : lsmc::synthetic_reference_book();
        lsmc::write_portfolio_csv(dir / "portfolio.csv", book.portfolio);
        lsmc::write_mortality_csv(dir / "mortality.csv", book.assumptions.mortality, 30,
                                  which == "toy" ? 100 : 110);
        lsmc::write_lapse_csv(dir / "lapse.csv", book.assumptions.lapse);
        lsmc::write_discount_csv(dir / "discount.csv", book.assumptions.discount);
        std::ofstream ini(dir / "config.ini");
        ini << "[data]\n"
               "portfolio = portfolio.csv\n"
               "mortality = mortality.csv\n"
               "lapse = lapse.csv\n"
               "discount = discount.csv\n"
               "\n"
               "[run]\n"
               "sims = 100000\n"
               "seed = 20240229\n"
               "level = 0.995\n"
               "out = out\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
