#include "latnet/rng.hpp"

#include <cmath>
#include <numbers>

namespace latnet {

std::uint64_t RandomStream::below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % bound);
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return r % bound;
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = splitmix64(base);
    for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
    return h;
}

}  // namespace latnet
