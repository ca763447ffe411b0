#pragma once

// Deciding whether polynomial boundary data is the trace of a holomorphic
// function on the ball.
//
// f lies in H^p(S) iff for every pair of multi-indices (alpha, beta):
//   (A) if alpha_j > beta_j for some j:  M(alpha, beta; f) = 0,
//   (B) if alpha <= beta componentwise:
//         c_beta^-1 M(alpha, beta; f) = c_{beta-alpha}^-1 M(0, beta-alpha; f),
// with M(alpha, beta; f) the integral of zeta^alpha conj(zeta)^beta f.
//
// The sweeps below check these conditions exactly on a finite range of
// pairs. Membership itself is decided by the exact residual of the Szego
// projection, ||f - C[f]||_2^2, which vanishes iff f is a trace.

#include "hardy/error.hpp"
#include "hardy/exactnum.hpp"
#include "hardy/multiindex.hpp"
#include "hardy/sphere_poly.hpp"
#include "hardy/transforms.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hardy {

enum class ConditionKind { A, B };

inline std::string_view to_string(ConditionKind kind) { return kind == ConditionKind::A ? "A" : "B"; }

struct ConditionReport {
    ConditionKind kind;
    MultiIndex alpha;
    MultiIndex beta;
    ComplexRational lhs;
    ComplexRational rhs; // always 0 for kind A
    bool satisfied;

    /// |lhs - rhs|^2, exact
    Rational discrepancy() const { return (lhs - rhs).norm_sq(); }
};

namespace detail {

inline void require_poly_dimension(const SpherePolynomial& f, const MultiIndex& a) {
    if (a.dimension() != f.dimension()) {
        throw Error(ErrorKind::dimension_mismatch, "multi-index dimension differs from polynomial dimension");
    }
}

inline ConditionReport condition_a(const SpherePolynomial& f, const MultiIndex& alpha, const MultiIndex& beta) {
    ComplexRational lhs = moment(f, alpha, beta);
    const bool ok = lhs.is_zero();
    return {ConditionKind::A, alpha, beta, std::move(lhs), ComplexRational{}, ok};
}

inline ConditionReport condition_b(const SpherePolynomial& f, const MultiIndex& alpha, const MultiIndex& beta) {
    const MultiIndex lambda = sub_checked(beta, alpha);
    ComplexRational lhs = moment(f, alpha, beta);
    ComplexRational rhs = moment(f, MultiIndex(f.dimension()), lambda);
    if (!lhs.is_zero()) {
        lhs *= ComplexRational(c_constant(beta).inverse());
    }
    if (!rhs.is_zero()) {
        rhs *= ComplexRational(c_constant(lambda).inverse());
    }
    const bool ok = lhs == rhs;
    return {ConditionKind::B, alpha, beta, std::move(lhs), std::move(rhs), ok};
}

} // namespace detail

/// Condition (A) at (alpha, beta); requires alpha_j > beta_j for some j.
inline ConditionReport check_condition_a(const SpherePolynomial& f, const MultiIndex& alpha, const MultiIndex& beta) {
    detail::require_poly_dimension(f, alpha);
    if (dominates(beta, alpha)) {
        throw Error(ErrorKind::usage, "condition A needs alpha_j > beta_j for some j, got alpha = " +
                                          alpha.to_string() + ", beta = " + beta.to_string());
    }
    return detail::condition_a(f, alpha, beta);
}

/// Condition (B) at (alpha, beta); requires beta to dominate alpha.
inline ConditionReport check_condition_b(const SpherePolynomial& f, const MultiIndex& alpha, const MultiIndex& beta) {
    detail::require_poly_dimension(f, alpha);
    if (!dominates(beta, alpha)) {
        throw Error(ErrorKind::usage, "condition B needs beta >= alpha, got alpha = " + alpha.to_string() +
                                          ", beta = " + beta.to_string());
    }
    return detail::condition_b(f, alpha, beta);
}

/// Checks every pair with |alpha|, |beta| <= max_order (alpha outer, beta
/// inner, both graded-lex) and returns the violated ones in that order.
inline std::vector<ConditionReport> sweep(const SpherePolynomial& f, unsigned max_order) {
    const auto indices = enumerate_upto(f.dimension(), max_order);
    std::vector<ConditionReport> violations;
    for (const auto& alpha : indices) {
        for (const auto& beta : indices) {
            // exactly one of the two cases applies to every pair
            ConditionReport report = dominates(beta, alpha) ? detail::condition_b(f, alpha, beta)
                                                            : detail::condition_a(f, alpha, beta);
            if (!report.satisfied) {
                violations.push_back(std::move(report));
            }
        }
    }
    return violations;
}

struct SzegoResidual {
    Rational residual_sq;          // ||f - C[f]||_2^2 on S
    HolomorphicPolynomial projection;
};

inline SzegoResidual szego_residual(const SpherePolynomial& f) {
    HolomorphicPolynomial g = cauchy_transform_poly(f);
    const SpherePolynomial difference = f - g.restrict_to_sphere();
    return {l2_norm_sq(difference), std::move(g)};
}

struct MembershipCertificate {
    bool member = false;
    Rational residual_sq;
    std::optional<HolomorphicPolynomial> witness_extension; // present iff member
    std::optional<ConditionReport> violation;               // largest |lhs - rhs| at the escalation order
    std::optional<unsigned> violation_order;                // sweep order at which violations appeared
    std::size_t violation_count = 0;                        // violations seen at that order
    std::vector<unsigned> orders_searched;
};

/// Exact membership decision with certificate.
///
/// Members carry C[f] as the extension witness. For non-members the sweep
/// order starts at `sweep_order` and grows by 2 until a violated condition
/// appears. A violation always exists with |alpha|, |beta| <= deg f: if every
/// condition held there, f and C[f] would have the same inner product with
/// each monomial of f - C[f], forcing the residual to vanish.
inline MembershipCertificate is_boundary_trace(const SpherePolynomial& f, unsigned sweep_order) {
    MembershipCertificate cert;
    SzegoResidual res = szego_residual(f);
    cert.residual_sq = res.residual_sq;
    cert.member = res.residual_sq.is_zero();
    if (cert.member) {
        cert.witness_extension = std::move(res.projection);
        return cert;
    }
    const unsigned limit = std::max(sweep_order, f.total_degree()) + 2;
    for (unsigned order = sweep_order; order <= limit; order += 2) {
        cert.orders_searched.push_back(order);
        auto violations = sweep(f, order);
        if (violations.empty()) {
            continue;
        }
        std::size_t best = 0;
        Rational best_gap = violations[0].discrepancy();
        for (std::size_t i = 1; i < violations.size(); ++i) {
            Rational gap = violations[i].discrepancy();
            if (gap > best_gap) {
                best = i;
                best_gap = std::move(gap);
            }
        }
        cert.violation_count = violations.size();
        cert.violation = std::move(violations[best]);
        cert.violation_order = order;
        return cert;
    }
    throw Error(ErrorKind::usage, "internal: nonzero Szego residual without a violated moment condition");
}

/// Fourier coefficients of a one-variable sphere polynomial on the unit
/// circle, where zeta^mu conj(zeta)^nu = zeta^(mu - nu). Keyed by frequency,
/// zero coefficients omitted.
inline std::map<long, ComplexRational> circle_fourier_coefficients(const SpherePolynomial& f) {
    if (f.dimension() != 1) {
        throw Error(ErrorKind::usage, "Fourier coefficients are defined here for n = 1 only");
    }
    std::map<long, ComplexRational> coeffs;
    for (const auto& [key, a] : f.terms()) {
        const long k = static_cast<long>(key.first[0]) - static_cast<long>(key.second[0]);
        coeffs[k] += a;
    }
    std::erase_if(coeffs, [](const auto& kv) { return kv.second.is_zero(); });
    return coeffs;
}

} // namespace hardy
