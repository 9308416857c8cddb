#ifndef LSMC_RANDOM_HPP
#define LSMC_RANDOM_HPP

#include <array>
#include <cstdint>

namespace lsmc {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key);
};

// Identifies which driver a substream feeds. Values are part of the
// reproducibility contract: changing them changes every simulated path.
enum class StreamTag : std::uint32_t {
    trend = 1,
    basis = 2,
    calamity = 3,
    lapse = 4,
    synthetic = 15,
};

// Independent stream of variates addressed by (seed, path, tag, inner).
// `inner` = 0 is the outer/LSMC stream; nested continuations use inner >= 1.
class Substream {
public:
    Substream(std::uint64_t seed, std::uint64_t path, StreamTag tag, std::uint32_t inner = 0);

    // Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    // Standard normal via Box-Muller; both variates of each pair are used.
    double normal();

private:
    void refill();

    Philox4x32::Key key_{};
    Philox4x32::Counter counter_{};
    Philox4x32::Counter block_{};
    int next_word_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

} // namespace lsmc

#endif // LSMC_RANDOM_HPP
