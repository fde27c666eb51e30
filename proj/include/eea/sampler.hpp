#pragma once

/// @file sampler.hpp
/// @brief Seeded random streams and canonical placements of a point on a fitness shell.
///
/// Generator: xoshiro256** with its 256-bit state expanded by SplitMix64 from a key that
/// mixes (seed, stream_id). Distinct (seed, stream_id) pairs give distinct, decorrelated
/// states; two streams of length L out of k overlap with probability about k²L / 2²⁵⁶,
/// so streams are treated as independent.
///
/// Gaussians use the Marsaglia polar method on 53-bit uniforms; the second variate of
/// each accepted pair is cached and returned by the next call. Sequences are therefore
/// a pure function of (seed, stream_id, call order), identical on every platform.

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace eea::sampler {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the `index`-th child job of `master` (used to give sweep points their own seeds).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

/// Single-owner random stream. Movable between threads, not shareable.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on {0, ..., n-1}; n must be >= 1.
    std::size_t index(std::size_t n) noexcept;

    /// N(0, 1) draw.
    double standard_normal() noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// One draw from N(0, sigma²). Throws DomainError for sigma <= 0.
double gaussian(RngStream& stream, double sigma);

enum class PlacementKind { SingleAxis, EqualCoordinates, UniformOnShell };

std::string_view to_string(PlacementKind kind) noexcept;

struct Placement {
    PlacementKind kind;
    double target_norm2;

    /// True when place() needs randomness (and therefore redraws per sample).
    bool is_random() const noexcept { return kind == PlacementKind::UniformOnShell; }
};

/// A point with ‖x‖² = target_norm2: (√t, 0, …, 0), (√(t/n), …) or uniform on the shell.
std::vector<double> place(const Placement& placement, std::size_t n, RngStream& stream);

/// In-place variant; `out.size()` is the dimension.
void place_into(const Placement& placement, std::span<double> out, RngStream& stream);

}  // namespace eea::sampler
