#pragma once

// Cauchy kernel C(z,w) = (1 - <z,w>)^-n and invariant Poisson kernel
// P(z,zeta) = (1 - |z|^2)^n / |1 - <z,zeta>|^2n on the unit ball of C^n.

#include "hardy/error.hpp"
#include "hardy/exactnum.hpp"
#include "hardy/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hardy {

inline constexpr double singularity_threshold = 1e-14;

namespace detail {

inline ComplexFloat ipow_n(ComplexFloat base, std::size_t n) { return ipow(base, static_cast<unsigned>(n)); }

inline void require_in_ball(const CPoint& z) {
    const double r = norm(z);
    if (!(r < 1.0)) {
        throw Error(ErrorKind::domain, "point is not in the open unit ball (|z| = " + std::to_string(r) + ")");
    }
}

} // namespace detail

inline ComplexFloat cauchy_kernel(const CPoint& z, const CPoint& w) {
    const ComplexFloat gap = 1.0 - herm_inner(z, w);
    if (std::abs(gap) <= singularity_threshold) {
        throw Error(ErrorKind::singularity, "Cauchy kernel is singular: <z,w> = 1");
    }
    const ComplexFloat value = 1.0 / detail::ipow_n(gap, z.dimension());
    if (!is_finite(value)) {
        throw Error(ErrorKind::range, "Cauchy kernel overflow");
    }
    return value;
}

/// Strictly positive for |z| < 1.
inline double poisson_kernel(const CPoint& z, const SpherePoint& zeta) {
    require_same_dimension(z, zeta.point());
    detail::require_in_ball(z);
    const auto n = static_cast<int>(z.dimension());
    const double gap = std::abs(1.0 - herm_inner(z, zeta.point()));
    return std::pow((1.0 - norm_sq(z)) / (gap * gap), n);
}

/// Truncation record for a power series evaluation.
struct KernelTruncation {
    unsigned order = 0;
    double tail_bound = 0.0;     // bound on the omitted terms of the series
    double rounding_bound = 0.0; // bound on float error in the retained partial sum
};

struct SeriesValue {
    ComplexFloat value;
    KernelTruncation truncation;
};

/// Upper bound for sum_{j>N} binomial(j+n-1, n-1) r^j.
///
/// Term ratios t_{j+1}/t_j = r (j+n)/(j+1) decrease in j, so the tail is
/// dominated by a geometric series starting at t_{N+1} with ratio
/// q = r (N+n+1)/(N+2). The full-series value (1-r)^-n also bounds the
/// tail; the smaller of the two is returned (the full value when q >= 1).
inline double series_tail_bound(double r, unsigned order, std::size_t n) {
    if (!(r >= 0.0) || !(r < 1.0)) {
        throw Error(ErrorKind::domain, "series tail bound requires 0 <= r < 1");
    }
    if (r == 0.0) {
        return 0.0;
    }
    const double nd = static_cast<double>(n);
    const double full = std::pow(1.0 - r, -nd);
    const double q = r * (order + nd + 1.0) / (order + 2.0);
    if (q >= 1.0) {
        return full;
    }
    // t_{N+1} = binomial(N+n, n-1) r^(N+1), via logs to stay finite for large N
    const double j = order + 1.0;
    const double log_t = std::lgamma(j + nd) - std::lgamma(j + 1.0) - std::lgamma(nd) + j * std::log(r);
    return std::min(full, std::exp(log_t) / (1.0 - q));
}

/// sum_{|w| <= N} c_w^-1 z^w conj(w)^w, grouped by total degree j through
/// the multinomial identity sum_{|w|=j} (j choose w) z^w conj(w)^w = <z,w>^j:
///   sum_{j=0}^{N} binomial(j+n-1, n-1) <z,w>^j.
inline SeriesValue cauchy_series(const CPoint& z, const CPoint& w, unsigned order) {
    require_same_dimension(z, w);
    const double r = norm(z) * norm(w);
    if (!(r < 1.0)) {
        throw Error(ErrorKind::divergence, "Cauchy series diverges: |z||w| >= 1");
    }
    const auto n = static_cast<double>(z.dimension());
    const ComplexFloat x = herm_inner(z, w);
    ComplexFloat power{1.0, 0.0};
    double binom = 1.0; // binomial(j+n-1, n-1)
    ComplexFloat sum{};
    double magnitude = 0.0;
    for (unsigned j = 0; j <= order; ++j) {
        sum += binom * power;
        magnitude += binom * std::abs(power);
        power *= x;
        binom = binom * (j + n) / (j + 1.0);
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double rounding = 8.0 * (order + n + 2.0) * eps * magnitude;
    return {sum, {order, series_tail_bound(r, order, z.dimension()), rounding}};
}

} // namespace hardy
