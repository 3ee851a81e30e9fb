#include "acband/rng.hpp"

#include <cmath>
#include <numbers>

#include "acband/error.hpp"

namespace acband {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view text) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

std::uint64_t SeededRng::next_u64() { return engine_(); }

double SeededRng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t SeededRng::below(std::uint64_t bound) {
    if (bound == 0) raise(Errc::InvalidArgument, "SeededRng::below requires a positive bound");
    // Rejection sampling on the top of the range keeps the draw unbiased.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    for (;;) {
        const std::uint64_t x = next_u64();
        if (x < limit) return x % bound;
    }
}

double SeededRng::exponential(double rate) {
    if (!(rate > 0.0)) raise(Errc::DomainError, "exponential rate must be positive");
    return -std::log1p(-uniform01()) / rate;
}

double SeededRng::standard_normal() {
    // Box-Muller, one value per call.
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SeededRng SeededRng::fork(std::string_view label, std::initializer_list<std::uint64_t> indices) const {
    std::uint64_t h = splitmix64(seed_ ^ fnv1a(label));
    for (std::uint64_t idx : indices) h = splitmix64(h ^ splitmix64(idx + 0x632be59bd9b4e019ULL));
    return SeededRng(h);
}

}  // namespace acband
