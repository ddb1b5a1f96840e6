#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace leosim {

/// Deterministic random source.
///
/// Wraps mt19937_64 but implements its own uniform/normal/shuffle so that
/// two runs with the same seed produce bit-identical streams regardless of
/// standard-library internals. Independent named substreams keep the
/// consumers (traffic, fiber noise, router shuffles, failure selection)
/// from perturbing each other.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Derives an independent stream from (seed, name, index).
    static Rng substream(std::uint64_t seed, std::string_view name,
                         std::uint64_t index = 0);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Zero-mean Gaussian via Box-Muller; consumes two uniforms per call.
    double normal(double mean, double stddev);

    /// Unbiased integer in [0, n), rejection sampled.
    std::uint64_t below(std::uint64_t n);

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// FNV-1a 64-bit hash, used for substream derivation (stable across builds).
std::uint64_t fnv1a64(std::string_view text);

}  // namespace leosim
