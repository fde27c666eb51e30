#include "eea/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "eea/errors.hpp"
#include "eea/problems.hpp"

namespace eea::sampler {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t key = derive_seed(seed, stream_id);
    for (auto& word : s_) {
        key += 0x9E3779B97F4A7C15ULL;
        word = mix64(key);
    }
}

RngStream::result_type RngStream::operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

std::size_t RngStream::index(std::size_t n) noexcept {
    // Reject the lowest (2^64 mod n) outputs so the modulo is exactly uniform.
    const std::uint64_t range = n;
    const std::uint64_t threshold = (0 - range) % range;
    std::uint64_t r = (*this)();
    while (r < threshold) {
        r = (*this)();
    }
    return static_cast<std::size_t>(r % range);
}

double RngStream::standard_normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u;
    double v;
    double s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

double gaussian(RngStream& stream, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("gaussian: sigma must be finite and > 0");
    }
    return sigma * stream.standard_normal();
}

std::string_view to_string(PlacementKind kind) noexcept {
    switch (kind) {
    case PlacementKind::SingleAxis:
        return "single-axis";
    case PlacementKind::EqualCoordinates:
        return "equal";
    case PlacementKind::UniformOnShell:
        return "shell";
    }
    return "?";
}

void place_into(const Placement& placement, std::span<double> out, RngStream& stream) {
    if (!(placement.target_norm2 > 0.0) || !std::isfinite(placement.target_norm2)) {
        throw DomainError("place: target_norm2 must be finite and > 0");
    }
    const std::size_t n = out.size();
    if (n < 1) {
        throw DomainError("place: dimension must be >= 1");
    }
    const double t = placement.target_norm2;
    switch (placement.kind) {
    case PlacementKind::SingleAxis:
        std::fill(out.begin(), out.end(), 0.0);
        out[0] = std::sqrt(t);
        return;
    case PlacementKind::EqualCoordinates:
        std::fill(out.begin(), out.end(), std::sqrt(t / static_cast<double>(n)));
        return;
    case PlacementKind::UniformOnShell: {
        double r2 = 0.0;
        do {
            for (double& v : out) {
                v = stream.standard_normal();
            }
            r2 = problems::norm2(out);
        } while (r2 == 0.0);
        const double scale = std::sqrt(t / r2);
        for (double& v : out) {
            v *= scale;
        }
        return;
    }
    }
}

std::vector<double> place(const Placement& placement, std::size_t n, RngStream& stream) {
    std::vector<double> x(n);
    place_into(placement, x, stream);
    return x;
}

}  // namespace eea::sampler
