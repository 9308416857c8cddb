#include "lsmc/io.hpp"

#include "lsmc/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace lsmc {

namespace {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;

    std::ptrdiff_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return static_cast<std::ptrdiff_t>(i);
        }
        return -1;
    }
};

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        const auto b = f.find_first_not_of(" \t");
        const auto e = f.find_last_not_of(" \t");
        f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
    }
    return fields;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto fields = split_line(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw Error(ErrorCode::io, path.string() + ":" + std::to_string(line_no) + ": expected " +
                                           std::to_string(table.header.size()) + " fields, found " +
                                           std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_no);
    }
    if (table.header.empty()) throw Error(ErrorCode::io, path.string() + ": empty file");
    return table;
}

std::size_t require_column(const CsvTable& t, const std::string& name,
                           const std::filesystem::path& path) {
    const auto c = t.column(name);
    if (c < 0) throw Error(ErrorCode::io, path.string() + ": missing column '" + name + "'");
    return static_cast<std::size_t>(c);
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) {
        throw Error(ErrorCode::io, path.string() + ":" + std::to_string(line) + ": '" + s +
                                       "' is not a number");
    }
    return v;
}

int parse_int(const std::string& s, const std::filesystem::path& path, std::size_t line) {
    int v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) {
        throw Error(ErrorCode::io, path.string() + ":" + std::to_string(line) + ": '" + s +
                                       "' is not an integer");
    }
    return v;
}

// Reads a (year-index, value) curve that must cover 1..T without gaps.
std::vector<double> read_curve(const std::filesystem::path& path, const std::string& index_name,
                               const std::string& value_name) {
    const CsvTable t = read_csv(path);
    const auto ci = require_column(t, index_name, path);
    const auto cv = require_column(t, value_name, path);
    std::map<int, double> values;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const int idx = parse_int(t.rows[r][ci], path, t.line_numbers[r]);
        if (!values.emplace(idx, parse_double(t.rows[r][cv], path, t.line_numbers[r])).second) {
            throw Error(ErrorCode::io, path.string() + ": duplicate " + index_name + " " +
                                           std::to_string(idx));
        }
    }
    std::vector<double> out;
    int expected = 1;
    for (const auto& [idx, v] : values) {
        if (idx != expected) {
            throw Error(ErrorCode::io, path.string() + ": " + index_name + " values must run 1..T, missing " +
                                           std::to_string(expected));
        }
        out.push_back(v);
        ++expected;
    }
    if (out.empty()) throw Error(ErrorCode::io, path.string() + ": no data rows");
    return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    return out;
}

} // namespace

Portfolio read_portfolio_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const auto c_id = require_column(t, "id", path);
    const auto c_age = require_column(t, "age", path);
    const auto c_lives = require_column(t, "lives", path);
    const auto c_sa = require_column(t, "sum_assured", path);
    const auto c_prem = require_column(t, "annual_net_premium", path);
    const auto c_term = require_column(t, "remaining_term", path);
    Portfolio p;
    p.reserve(t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        const auto line = t.line_numbers[r];
        ModelPoint mp;
        mp.id = row[c_id];
        mp.age = parse_int(row[c_age], path, line);
        mp.lives = parse_double(row[c_lives], path, line);
        mp.sum_assured = parse_double(row[c_sa], path, line);
        mp.annual_net_premium = parse_double(row[c_prem], path, line);
        mp.remaining_term = parse_int(row[c_term], path, line);
        p.push_back(std::move(mp));
    }
    return p;
}

MortalityTable read_mortality_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const auto c_q = require_column(t, "q", path);
    const auto c_age = t.column("age");
    const auto c_year = t.column("year");
    if (c_age < 0 && c_year < 0) {
        throw Error(ErrorCode::io, path.string() + ": needs an 'age' and/or 'year' column");
    }
    if (c_age < 0) {
        return MortalityTable::flat(read_curve(path, "year", "q"));
    }
    if (c_year < 0) {
        std::map<int, double> rates;
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const auto line = t.line_numbers[r];
            rates[parse_int(t.rows[r][static_cast<std::size_t>(c_age)], path, line)] =
                parse_double(t.rows[r][c_q], path, line);
        }
        return MortalityTable::by_age(std::move(rates));
    }
    std::map<std::pair<int, int>, double> rates;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto line = t.line_numbers[r];
        const int age = parse_int(t.rows[r][static_cast<std::size_t>(c_age)], path, line);
        const int year = parse_int(t.rows[r][static_cast<std::size_t>(c_year)], path, line);
        rates[{age, year}] = parse_double(t.rows[r][c_q], path, line);
    }
    return MortalityTable::by_age_and_year(std::move(rates));
}

std::vector<double> read_lapse_csv(const std::filesystem::path& path) {
    return read_curve(path, "year", "w");
}

std::vector<double> read_discount_csv(const std::filesystem::path& path) {
    return read_curve(path, "t", "delta");
}

AssumptionSet read_assumptions(const std::filesystem::path& mortality,
                               const std::filesystem::path& lapse,
                               const std::filesystem::path& discount) {
    AssumptionSet a;
    a.mortality = read_mortality_csv(mortality);
    a.lapse = read_lapse_csv(lapse);
    a.discount = read_discount_csv(discount);
    a.horizon = static_cast<int>(a.discount.size());
    return a;
}

std::string format_number(double value) {
    char buf[400];
    const double mag = std::abs(value);
    // plain notation for ordinary magnitudes, still the shortest round-trip digits
    const auto format = mag >= 1e-5 && mag < 1e16 ? std::chars_format::fixed : std::chars_format::general;
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, format);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

CsvWriter& CsvWriter::field(const std::string& text) {
    if (!first_) out_ << ',';
    first_ = false;
    if (text.find_first_of(",\"\r\n") == std::string::npos) {
        out_ << text;
    } else {
        out_ << '"';
        for (char c : text) {
            if (c == '"') out_ << '"';
            out_ << c;
        }
        out_ << '"';
    }
    return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(format_number(value)); }

CsvWriter& CsvWriter::field(long long value) { return field(std::to_string(value)); }

void CsvWriter::end_row() {
    out_ << "\r\n";
    first_ = true;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (const auto& f : fields) field(f);
    end_row();
}

void write_portfolio_csv(const std::filesystem::path& path, const Portfolio& portfolio) {
    auto out = open_out(path);
    CsvWriter w(out);
    w.row({"id", "age", "lives", "sum_assured", "annual_net_premium", "remaining_term"});
    for (const auto& mp : portfolio) {
        w.field(mp.id).field(static_cast<long long>(mp.age)).field(mp.lives).field(mp.sum_assured);
        w.field(mp.annual_net_premium).field(static_cast<long long>(mp.remaining_term));
        w.end_row();
    }
}

void write_mortality_csv(const std::filesystem::path& path, const MortalityTable& table,
                         int min_age, int max_age) {
    auto out = open_out(path);
    CsvWriter w(out);
    w.row({"age", "q"});
    for (int age = min_age; age <= max_age; ++age) {
        const auto q = table.rate(age, 1);
        if (!q) continue;
        w.field(static_cast<long long>(age)).field(*q);
        w.end_row();
    }
}

void write_lapse_csv(const std::filesystem::path& path, const std::vector<double>& lapse) {
    auto out = open_out(path);
    CsvWriter w(out);
    w.row({"year", "w"});
    for (std::size_t t = 0; t < lapse.size(); ++t) {
        w.field(static_cast<long long>(t + 1)).field(lapse[t]);
        w.end_row();
    }
}

void write_discount_csv(const std::filesystem::path& path, const std::vector<double>& discount) {
    auto out = open_out(path);
    CsvWriter w(out);
    w.row({"t", "delta"});
    for (std::size_t t = 0; t < discount.size(); ++t) {
        w.field(static_cast<long long>(t + 1)).field(discount[t]);
        w.end_row();
    }
}

} // namespace lsmc
