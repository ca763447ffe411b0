#pragma once

// Cauchy and invariant Poisson integrals of boundary data.
//
// Polynomial data is handled exactly (Cauchy) or through a certified
// truncated series (Poisson); black-box data goes through Monte-Carlo.

#include "hardy/error.hpp"
#include "hardy/exactnum.hpp"
#include "hardy/kernels.hpp"
#include "hardy/montecarlo.hpp"
#include "hardy/multiindex.hpp"
#include "hardy/sphere.hpp"
#include "hardy/sphere_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hardy {

/// C[f] for polynomial f, exact. Integrating the kernel series
/// sum_w c_w^-1 z^w conj(zeta)^w term by term against zeta^mu conj(zeta)^nu
/// leaves only w = mu - nu, so
///   C[zeta^mu conj(zeta)^nu](z) = (c_mu / c_{mu-nu}) z^{mu-nu}  if nu <= mu,
/// and 0 otherwise. On L^2 this is the orthogonal projection onto H^2.
inline HolomorphicPolynomial cauchy_transform_poly(const SpherePolynomial& f) {
    HolomorphicPolynomial g(f.dimension());
    for (const auto& [key, a] : f.terms()) {
        const auto& [mu, nu] = key;
        if (!dominates(mu, nu)) {
            continue;
        }
        const MultiIndex lambda = sub_checked(mu, nu);
        g.add_term(lambda, a * ComplexRational(c_constant(mu) / c_constant(lambda)));
    }
    return g;
}

inline ComplexFloat eval_holo(const HolomorphicPolynomial& g, const CPoint& z) { return g.eval(z); }

/// Monte-Carlo estimate of C[g](z) = integral of C(z,zeta) g(zeta).
template <class Function>
MCEstimate cauchy_transform_mc(Function&& g, const CPoint& z, SphereSampler& sampler, std::uint64_t samples) {
    detail::require_in_ball(z);
    if (z.dimension() != sampler.dimension()) {
        throw Error(ErrorKind::dimension_mismatch, "point and sampler dimensions differ");
    }
    return mc_mean(sampler, samples, [&](const SpherePoint& zeta) {
        const ComplexFloat gv = g(zeta);
        return is_finite(gv) ? cauchy_kernel(z, zeta.point()) * gv : gv;
    });
}

/// Monte-Carlo estimate of P[g](z) = integral of P(z,zeta) g(zeta).
template <class Function>
MCEstimate poisson_transform_mc(Function&& g, const CPoint& z, SphereSampler& sampler, std::uint64_t samples) {
    detail::require_in_ball(z);
    if (z.dimension() != sampler.dimension()) {
        throw Error(ErrorKind::dimension_mismatch, "point and sampler dimensions differ");
    }
    return mc_mean(sampler, samples, [&](const SpherePoint& zeta) {
        const ComplexFloat gv = g(zeta);
        return is_finite(gv) ? poisson_kernel(z, zeta) * gv : gv;
    });
}

/// Truncated moment expansion of the Poisson integral of a sphere polynomial
///
///   P_N[f](z) = (1-|z|^2)^n  sum_{|u|,|w| <= N} c_w^-1 c_u^-1 z^w conj(z)^u M(u, w; f)
///
/// with M the exact moments of f, on the sphere |z|^2 = s.
///
/// Only pairs with u + mu = w + nu for some term a zeta^mu conj(zeta)^nu of f
/// contribute, so each term reduces to a single sum over u. Writing
/// d = mu - nu, j = |u|, each term equals
///
///   a K(j) (u+mu)! / (u! (u+d)!) z^{u+d} conj(z)^u,
///   K(j) = (n-1+j)! (n-1+j+|mu|-|nu|)! / ((n-1+j+|mu|)! (n-1)!).
///
/// Per coordinate the u_k-dependence is p_k(u') x_k^{u'} / u'! with
/// x_k = |z_k|^2, u' = u_k - max(0, -d_k), and p_k a polynomial of degree
/// min(mu_k, nu_k); summing p(u) y^u / u! gives Q(y) e^y with Q built from
/// forward differences of p. The degree-j slice is therefore
/// sum_i R_i s^{j-A-i} / (j-A-i)!, R = prod_k Q_k(x_k t), so the whole
/// truncated series costs O(N deg f) per term with no index enumeration.
/// The sums over j depend only on s and are precomputed here; evaluation at
/// a point costs O(deg f) per term.
class PoissonSeries {
public:
    PoissonSeries(const SpherePolynomial& f, double s, unsigned order)
        : dimension_(f.dimension()), s_(s), order_(order) {
        if (!(s >= 0.0) || !(s < 1.0)) {
            throw Error(ErrorKind::domain, "Poisson series requires |z| < 1");
        }
        scale_ = std::pow(1.0 - s, static_cast<double>(dimension_));
        for (const auto& [key, a] : f.terms()) {
            terms_.push_back(plan_term(key.first, key.second, a));
        }
    }

    unsigned order() const noexcept { return order_; }
    double radius_sq() const noexcept { return s_; }

    ComplexFloat eval(const CPoint& z) const {
        check_point(z);
        ComplexFloat total{};
        std::vector<double> r;
        for (const auto& t : terms_) {
            if (t.sums.empty()) {
                continue;
            }
            weights(t, z, r);
            double acc = 0.0;
            for (std::size_t i = 0; i < r.size() && i < t.sums.size(); ++i) {
                acc += r[i] * t.sums[i];
            }
            total += t.coefficient * prefactor(t, z) * acc;
        }
        return scale_ * total;
    }

    /// Bound on the omitted part of the series at z: the same sums with
    /// every term replaced by its absolute value, restricted to j > N.
    double tail_bound(const CPoint& z) const {
        check_point(z);
        double total = 0.0;
        std::vector<double> r;
        for (const auto& t : terms_) {
            weights(t, z, r);
            double acc = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) {
                acc += r[i] * t.tails[i];
            }
            total += std::abs(t.coefficient) * std::abs(prefactor(t, z)) * acc;
        }
        return scale_ * total;
    }

    /// Tail bound valid for every z with |z|^2 = s (|z_k| <= 1).
    double uniform_tail_bound() const {
        double total = 0.0;
        for (const auto& t : terms_) {
            double acc = 0.0;
            for (std::size_t i = 0; i < t.unit_weights.size(); ++i) {
                acc += t.unit_weights[i] * t.tails[i];
            }
            total += std::abs(t.coefficient) * acc;
        }
        return scale_ * total;
    }

private:
    struct TermPlan {
        ComplexFloat coefficient;
        std::vector<unsigned> up;   // max(d_k, 0): powers of z_k
        std::vector<unsigned> down; // max(-d_k, 0): powers of conj(z_k)
        std::vector<std::vector<double>> q; // Q_k coefficients, degree min(mu_k, nu_k)
        std::vector<double> unit_weights;   // R_i at x = (1, ..., 1)
        std::vector<double> sums;           // sum_{j=A+i}^{J} W(j, i)
        std::vector<double> tails;          // bound on sum_{j>J} W(j, i)
    };

    // W(j, i) = K(j) s^k / k!, k = j - A - i, via logs
    double weight_direct(unsigned j, unsigned shift, int total_diff, unsigned mu_deg) const {
        const double n = static_cast<double>(dimension_);
        const unsigned k = j - shift;
        const double log_k = std::lgamma(n + j) + std::lgamma(n + j + total_diff) - std::lgamma(n + j + mu_deg) -
                             std::lgamma(n);
        if (k == 0) {
            return std::exp(log_k);
        }
        if (s_ == 0.0) {
            return 0.0;
        }
        return std::exp(log_k + k * std::log(s_) - std::lgamma(k + 1.0));
    }

    TermPlan plan_term(const MultiIndex& mu, const MultiIndex& nu, const ComplexRational& a) const {
        TermPlan t;
        t.coefficient = to_float(a);
        const std::size_t n = dimension_;
        t.up.resize(n);
        t.down.resize(n);
        t.q.resize(n);
        unsigned shift_a = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const int d = static_cast<int>(mu[k]) - static_cast<int>(nu[k]);
            t.up[k] = d > 0 ? static_cast<unsigned>(d) : 0U;
            t.down[k] = d < 0 ? static_cast<unsigned>(-d) : 0U;
            shift_a += t.down[k];
            const unsigned m = std::min(mu[k], nu[k]);
            const unsigned abs_d = t.up[k] + t.down[k];
            // p(u) = prod_{i=1}^{m} (u + |d| + i); Q coefficients are
            // forward differences Delta^l p(0) / l!
            std::vector<double> values(m + 1);
            for (unsigned u = 0; u <= m; ++u) {
                double v = 1.0;
                for (unsigned i = 1; i <= m; ++i) {
                    v *= static_cast<double>(u + abs_d + i);
                }
                values[u] = v;
            }
            std::vector<double>& q = t.q[k];
            q.resize(m + 1);
            double l_fact = 1.0;
            for (unsigned l = 0; l <= m; ++l) {
                if (l > 0) {
                    l_fact *= l;
                }
                q[l] = values[0] / l_fact;
                for (unsigned u = 0; u + l < m; ++u) {
                    values[u] = values[u + 1] - values[u];
                }
            }
        }
        t.unit_weights = convolve_all(t.q, nullptr);

        const int total_diff = static_cast<int>(mu.degree()) - static_cast<int>(nu.degree());
        const unsigned mu_deg = mu.degree();
        const auto degree_r = static_cast<unsigned>(t.unit_weights.size() - 1);
        // j ranges over |u| <= N with |w| = j + total_diff <= N
        const long last = static_cast<long>(order_) - std::max(0, total_diff);
        const double n_d = static_cast<double>(dimension_);
        t.tails.assign(degree_r + 1, 0.0);
        if (last >= static_cast<long>(shift_a)) {
            t.sums.assign(degree_r + 1, 0.0);
        }
        for (unsigned i = 0; i <= degree_r; ++i) {
            const unsigned shift = shift_a + i;
            if (static_cast<long>(shift) <= last) {
                double w = weight_direct(shift, shift, total_diff, mu_deg);
                double sum = 0.0;
                for (auto j = static_cast<long>(shift); j <= last; ++j) {
                    sum += w;
                    const double jd = static_cast<double>(j);
                    w *= (n_d + jd) * (n_d + jd + total_diff) / (n_d + jd + mu_deg) * s_ /
                         (jd + 1.0 - static_cast<double>(shift));
                }
                t.sums[i] = sum;
            }
            const auto first_omitted = static_cast<unsigned>(std::max<long>(last + 1, shift));
            const double w0 = weight_direct(first_omitted, shift, total_diff, mu_deg);
            if (w0 == 0.0) {
                continue;
            }
            const double q = s_ * (n_d + first_omitted) / (first_omitted + 1.0 - shift);
            t.tails[i] = q < 1.0 ? w0 / (1.0 - q) : std::numeric_limits<double>::infinity();
        }
        return t;
    }

    // coefficients of prod_k Q_k(x_k t); x == nullptr means x_k = 1
    static std::vector<double> convolve_all(const std::vector<std::vector<double>>& q, const double* x) {
        std::vector<double> r{1.0};
        for (std::size_t k = 0; k < q.size(); ++k) {
            if (q[k].size() == 1) {
                for (auto& v : r) {
                    v *= q[k][0];
                }
                continue;
            }
            std::vector<double> next(r.size() + q[k].size() - 1, 0.0);
            double xp = 1.0;
            for (std::size_t l = 0; l < q[k].size(); ++l) {
                const double c = q[k][l] * xp;
                for (std::size_t i = 0; i < r.size(); ++i) {
                    next[i + l] += r[i] * c;
                }
                xp *= x != nullptr ? x[k] : 1.0;
            }
            r = std::move(next);
        }
        return r;
    }

    void weights(const TermPlan& t, const CPoint& z, std::vector<double>& out) const {
        std::vector<double> x(dimension_);
        for (std::size_t k = 0; k < dimension_; ++k) {
            x[k] = std::norm(z[k]);
        }
        out = convolve_all(t.q, x.data());
    }

    static ComplexFloat prefactor(const TermPlan& t, const CPoint& z) {
        ComplexFloat p{1.0, 0.0};
        for (std::size_t k = 0; k < t.up.size(); ++k) {
            if (t.up[k] != 0) {
                p *= detail::ipow(z[k], t.up[k]);
            }
            if (t.down[k] != 0) {
                p *= detail::ipow(std::conj(z[k]), t.down[k]);
            }
        }
        return p;
    }

    void check_point(const CPoint& z) const {
        if (z.dimension() != dimension_) {
            throw Error(ErrorKind::dimension_mismatch, "point dimension differs from polynomial dimension");
        }
        if (std::abs(norm_sq(z) - s_) > 1e-10) {
            throw Error(ErrorKind::usage, "point does not lie on the radius the series was prepared for");
        }
    }

    std::size_t dimension_;
    double s_;
    unsigned order_;
    double scale_ = 1.0;
    std::vector<TermPlan> terms_;
};

struct PoissonSeriesValue {
    ComplexFloat value;
    double tail_bound = 0.0;
    unsigned order = 0;
};

/// P[f](z) through the truncated moment expansion with |u|, |w| <= order.
inline PoissonSeriesValue poisson_series_eval(const SpherePolynomial& f, const CPoint& z, unsigned order) {
    if (z.dimension() != f.dimension()) {
        throw Error(ErrorKind::dimension_mismatch, "point dimension differs from polynomial dimension");
    }
    detail::require_in_ball(z);
    const PoissonSeries series(f, norm_sq(z), order);
    return {series.eval(z), series.tail_bound(z), order};
}

/// Smallest order whose uniform tail bound on |z| = radius is <= tolerance
/// (searched by doubling, then bisection).
inline unsigned poisson_order_for(const SpherePolynomial& f, double radius, double tolerance) {
    if (!(radius >= 0.0) || !(radius < 1.0)) {
        throw Error(ErrorKind::domain, "radius must lie in [0, 1)");
    }
    const double s = radius * radius;
    auto ok = [&](unsigned order) {
        // tails only; the plan's partial sums are cheap next to the scan itself
        return PoissonSeries(f, s, order).uniform_tail_bound() <= tolerance;
    };
    unsigned hi = std::max(4U, f.total_degree());
    constexpr unsigned max_order = 1U << 22;
    while (!ok(hi)) {
        if (hi >= max_order) {
            throw Error(ErrorKind::divergence, "Poisson series order exceeds limit for radius " + std::to_string(radius));
        }
        hi *= 2;
    }
    if (ok(0)) {
        return 0;
    }
    // ok(lo) is false, ok(hi) is true
    unsigned lo = 0;
    while (hi - lo > 1) {
        const unsigned mid = lo + (hi - lo) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

/// One radius of an L^p radial scan. Estimates use shared sphere samples.
struct RadialScanRow {
    double r = 0.0;
    double p = 2.0;
    double lp_error = 0.0;        // ||P[f]_r - f||_p
    double lp_error_stderr = 0.0;
    double lp_norm_r = 0.0;       // ||P[f]_r||_p
    double lp_norm_r_stderr = 0.0;
    unsigned order = 0;           // Poisson series order used at this radius
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

inline constexpr double radial_scan_tail_tolerance = 1e-8;

namespace detail {

// (mean)^(1/p) with delta-method standard error
inline std::pair<double, double> lp_from_mean(const MeanAccumulator& acc, double p) {
    const double m = std::max(acc.mean().real(), 0.0);
    if (m == 0.0) {
        return {0.0, 0.0};
    }
    const double value = std::pow(m, 1.0 / p);
    return {value, acc.std_error() * value / (p * m)};
}

} // namespace detail

/// ||P[f]_r - f||_p and ||P[f]_r||_p for each radius, with P[f](r zeta)
/// evaluated by the truncated series (tail below 1e-8) on one shared set
/// of `samples` sphere draws.
inline std::vector<RadialScanRow> radial_scan(const SpherePolynomial& f, double p, std::span<const double> radii,
                                              SphereSampler& sampler, std::uint64_t samples) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::domain, "exponent p must satisfy 1 <= p < infinity");
    }
    for (double r : radii) {
        if (!(r >= 0.0) || !(r < 1.0)) {
            throw Error(ErrorKind::domain, "radii must lie in [0, 1)");
        }
    }
    if (samples < 2) {
        throw Error(ErrorKind::usage, "radial scan needs at least 2 samples");
    }
    if (f.dimension() != sampler.dimension()) {
        throw Error(ErrorKind::dimension_mismatch, "polynomial and sampler dimensions differ");
    }
    const std::uint64_t first = sampler.advance(samples);
    const std::uint64_t chunks = (samples + detail::chunk_size - 1) / detail::chunk_size;

    std::vector<RadialScanRow> rows;
    rows.reserve(radii.size());
    for (double r : radii) {
        const unsigned order = poisson_order_for(f, r, radial_scan_tail_tolerance);
        const PoissonSeries series(f, r * r, order);
        std::vector<MeanAccumulator> err_parts(chunks);
        std::vector<MeanAccumulator> norm_parts(chunks);
        detail::for_each_chunk(samples, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
            MeanAccumulator err;
            MeanAccumulator nrm;
            for (std::uint64_t i = begin; i < end; ++i) {
                const SpherePoint zeta = sampler.sample_at(first + i);
                const CPoint z = zeta.point().scaled(r);
                const ComplexFloat extension = series.eval(z);
                const ComplexFloat boundary = f.eval(zeta.point());
                err.add(std::pow(std::abs(extension - boundary), p));
                nrm.add(std::pow(std::abs(extension), p));
            }
            err_parts[c] = err;
            norm_parts[c] = nrm;
        });
        MeanAccumulator err;
        MeanAccumulator nrm;
        for (std::uint64_t c = 0; c < chunks; ++c) {
            err.merge(err_parts[c]);
            nrm.merge(norm_parts[c]);
        }
        RadialScanRow row;
        row.r = r;
        row.p = p;
        std::tie(row.lp_error, row.lp_error_stderr) = detail::lp_from_mean(err, p);
        std::tie(row.lp_norm_r, row.lp_norm_r_stderr) = detail::lp_from_mean(nrm, p);
        row.order = order;
        row.samples = samples;
        row.seed = sampler.seed();
        rows.push_back(row);
    }
    return rows;
}

} // namespace hardy
