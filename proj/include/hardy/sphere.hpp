#pragma once

// Points of C^n, the unit sphere S, and uniform sampling from the
// normalized surface measure sigma.

#include "hardy/error.hpp"
#include "hardy/exactnum.hpp"
#include "hardy/multiindex.hpp"

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hardy {

class CPoint {
public:
    explicit CPoint(std::vector<ComplexFloat> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) {
            throw Error(ErrorKind::construction, "point dimension must be positive");
        }
        for (const auto& c : coords_) {
            if (!is_finite(c)) {
                throw Error(ErrorKind::range, "point coordinate is not finite");
            }
        }
    }
    CPoint(std::initializer_list<ComplexFloat> coords) : CPoint(std::vector<ComplexFloat>(coords)) {}

    static CPoint zero(std::size_t n) { return CPoint(std::vector<ComplexFloat>(n)); }

    std::size_t dimension() const noexcept { return coords_.size(); }
    const ComplexFloat& operator[](std::size_t k) const { return coords_[k]; }
    std::span<const ComplexFloat> coords() const noexcept { return coords_; }

    CPoint scaled(double r) const {
        std::vector<ComplexFloat> c = coords_;
        for (auto& v : c) {
            v *= r;
        }
        return CPoint(std::move(c));
    }

private:
    std::vector<ComplexFloat> coords_;
};

inline void require_same_dimension(const CPoint& a, const CPoint& b) {
    if (a.dimension() != b.dimension()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "point dimensions differ: " + std::to_string(a.dimension()) + " vs " +
                        std::to_string(b.dimension()));
    }
}

/// <z,w> = z_1 conj(w_1) + ... + z_n conj(w_n)
inline ComplexFloat herm_inner(const CPoint& z, const CPoint& w) {
    require_same_dimension(z, w);
    ComplexFloat s{};
    for (std::size_t k = 0; k < z.dimension(); ++k) {
        s += z[k] * std::conj(w[k]);
    }
    return s;
}

inline double norm_sq(const CPoint& z) {
    double s = 0.0;
    for (const auto& c : z.coords()) {
        s += std::norm(c);
    }
    return s;
}

inline double norm(const CPoint& z) { return std::sqrt(norm_sq(z)); }

/// A point of the unit sphere. Inputs within 1e-8 of unit norm are
/// renormalized; anything farther is rejected.
class SpherePoint {
public:
    static constexpr double unit_tolerance = 1e-12;
    static constexpr double renormalize_tolerance = 1e-8;

    explicit SpherePoint(CPoint p) : point_(std::move(p)) {
        const double r = norm(point_);
        if (std::abs(r - 1.0) > renormalize_tolerance) {
            throw Error(ErrorKind::domain, "point is not on the unit sphere (|z| = " + std::to_string(r) + ")");
        }
        if (r != 1.0) {
            point_ = point_.scaled(1.0 / r);
        }
    }
    SpherePoint(std::initializer_list<ComplexFloat> coords) : SpherePoint(CPoint(coords)) {}

    const CPoint& point() const noexcept { return point_; }
    operator const CPoint&() const noexcept { return point_; } // NOLINT(google-explicit-constructor)
    std::size_t dimension() const noexcept { return point_.dimension(); }
    const ComplexFloat& operator[](std::size_t k) const { return point_[k]; }

private:
    CPoint point_;
};

namespace detail {

// splitmix64 finalizer; bijective 64-bit mixer
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// uniform in (0, 1]
inline double open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

} // namespace detail

/// Counter-based sampler of sigma on S in C^n.
///
/// Draw k is a pure function of (seed, dimension, k): each complex
/// coordinate is a Box-Muller pair built from two hashed words, and the
/// Gaussian vector is divided by its length. Chunked or parallel consumers
/// can therefore address any sub-range of the stream directly.
class SphereSampler {
public:
    SphereSampler(std::size_t dimension, std::uint64_t seed) : dimension_(dimension), seed_(seed) {
        if (dimension == 0) {
            throw Error(ErrorKind::construction, "sampler dimension must be positive");
        }
    }

    std::size_t dimension() const noexcept { return dimension_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t counter() const noexcept { return counter_; }

    SpherePoint sample() { return sample_at(counter_++); }

    /// Reserves `count` consecutive draws and returns the index of the first.
    std::uint64_t advance(std::uint64_t count) noexcept {
        const std::uint64_t first = counter_;
        counter_ += count;
        return first;
    }

    SpherePoint sample_at(std::uint64_t index) const {
        std::vector<ComplexFloat> coords(dimension_);
        const std::uint64_t stream = detail::mix64(seed_ ^ detail::mix64(dimension_));
        for (std::uint64_t attempt = 0;; ++attempt) {
            const std::uint64_t base = detail::mix64(stream ^ detail::mix64(index) ^ (attempt << 56));
            double r2 = 0.0;
            for (std::size_t k = 0; k < dimension_; ++k) {
                const std::uint64_t w1 = detail::mix64(base + 2 * k);
                const std::uint64_t w2 = detail::mix64(base + 2 * k + 1);
                const double radius = std::sqrt(-2.0 * std::log(detail::open_unit(w1)));
                const double angle = 2.0 * std::numbers::pi * detail::open_unit(w2);
                coords[k] = {radius * std::cos(angle), radius * std::sin(angle)};
                r2 += radius * radius;
            }
            if (r2 > 0.0) {
                const double inv = 1.0 / std::sqrt(r2);
                for (auto& c : coords) {
                    c *= inv;
                }
                return SpherePoint(CPoint(std::move(coords)));
            }
        }
    }

private:
    std::size_t dimension_;
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

namespace detail {

inline ComplexFloat ipow(ComplexFloat base, unsigned exponent) {
    ComplexFloat result{1.0, 0.0};
    while (exponent != 0) {
        if ((exponent & 1U) != 0) {
            result *= base;
        }
        base *= base;
        exponent >>= 1U;
    }
    return result;
}

} // namespace detail

/// z^alpha conj(z)^beta for an arbitrary point of C^n.
inline ComplexFloat monomial_eval(const CPoint& z, const MultiIndex& alpha, const MultiIndex& beta) {
    require_same_dimension(alpha, beta);
    if (alpha.dimension() != z.dimension()) {
        throw Error(ErrorKind::dimension_mismatch, "monomial and point dimensions differ");
    }
    ComplexFloat v{1.0, 0.0};
    for (std::size_t k = 0; k < z.dimension(); ++k) {
        if (alpha[k] != 0) {
            v *= detail::ipow(z[k], alpha[k]);
        }
        if (beta[k] != 0) {
            v *= detail::ipow(std::conj(z[k]), beta[k]);
        }
    }
    return v;
}

} // namespace hardy
