#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace latnet {

/// Identity of the random stream. Written into data files so that archived
/// runs can be reproduced; bump the version if the sampling code changes.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64+box-muller/v1";

/// Standard normal and uniform draws on top of std::mt19937_64.
///
/// The engine's output sequence is fixed by the C++ standard; the
/// transformations below are implemented here (rather than with the
/// implementation-defined std::normal_distribution) so the stream is
/// identical across standard libraries.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on the open interval (lo, hi); returns lo when lo == hi.
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_open(); }

    /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound);

    /// Standard normal via the Box-Muller transform (pairs are cached).
    double normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Mixes a base seed with a list of integers (splitmix64 finalizer chain).
/// Used to give each cell of a sweep its own independent, order-free seed.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);

}  // namespace latnet
