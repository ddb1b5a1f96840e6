#include "leosim/rng.hpp"

#include <cmath>

namespace leosim {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {
// splitmix64 finalizer; mixes seed material into a well-spread 64-bit state.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
}  // namespace

Rng Rng::substream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
    std::uint64_t h = fnv1a64(name);
    return Rng(mix64(mix64(seed ^ h) + index));
}

double Rng::normal(double mean, double stddev) {
    // Box-Muller, always drawing a fresh pair and discarding the second
    // value, so the stream position is a pure function of the call count.
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();  // guard log(0)
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(6.28318530717958647692 * u2);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
}

}  // namespace leosim
