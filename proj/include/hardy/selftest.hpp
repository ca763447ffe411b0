#pragma once

// Seeded random inputs and the randomized self-test harness behind
// `hardytrace verify`.

#include "hardy/exactnum.hpp"
#include "hardy/kernels.hpp"
#include "hardy/multiindex.hpp"
#include "hardy/sphere.hpp"
#include "hardy/sphere_poly.hpp"
#include "hardy/tracetest.hpp"
#include "hardy/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace hardy::selftest {

/// mt19937_64 has a fully specified output sequence; the helpers below map
/// its words onto ranges by hand so streams match across standard libraries.
using Rng = std::mt19937_64;

inline unsigned uniform_int(Rng& rng, unsigned lo, unsigned hi) {
    return lo + static_cast<unsigned>(rng() % (static_cast<std::uint64_t>(hi - lo) + 1));
}

inline double uniform_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline Rational random_rational(Rng& rng) {
    const long long num = static_cast<long long>(uniform_int(rng, 0, 10)) - 5;
    const long long den = uniform_int(rng, 1, 4);
    return {BigInt(num), BigInt(den)};
}

inline ComplexRational random_coefficient(Rng& rng) {
    ComplexRational c;
    do {
        c = ComplexRational(random_rational(rng), uniform_int(rng, 0, 1) == 0 ? Rational{} : random_rational(rng));
    } while (c.is_zero());
    return c;
}

/// Random multi-index of total degree exactly `degree`.
inline MultiIndex random_index(Rng& rng, std::size_t n, unsigned degree) {
    MultiIndex a(n);
    for (unsigned i = 0; i < degree; ++i) {
        a[uniform_int(rng, 0, static_cast<unsigned>(n - 1))] += 1;
    }
    return a;
}

/// Sum of up to `max_terms` terms a zeta^mu conj(zeta)^nu with |mu| + |nu| <= max_degree.
inline SpherePolynomial random_sphere_polynomial(Rng& rng, std::size_t n, unsigned max_degree, unsigned max_terms = 4) {
    SpherePolynomial f(n);
    const unsigned count = uniform_int(rng, 1, max_terms);
    for (unsigned t = 0; t < count; ++t) {
        const unsigned total = uniform_int(rng, 0, max_degree);
        const unsigned holo = uniform_int(rng, 0, total);
        f.add_term(random_index(rng, n, holo), random_index(rng, n, total - holo), random_coefficient(rng));
    }
    return f;
}

/// Nonzero holomorphic polynomial of degree <= max_degree.
inline HolomorphicPolynomial random_holomorphic(Rng& rng, std::size_t n, unsigned max_degree, unsigned max_terms = 4) {
    HolomorphicPolynomial g(n);
    while (g.is_zero()) {
        const unsigned count = uniform_int(rng, 1, max_terms);
        for (unsigned t = 0; t < count; ++t) {
            g.add_term(random_index(rng, n, uniform_int(rng, 0, max_degree)), random_coefficient(rng));
        }
    }
    return g;
}

/// A member written in a non-holomorphic form: g + q (|zeta|^2 - 1) with g
/// holomorphic and q arbitrary, which equals g on S.
inline SpherePolynomial random_member(Rng& rng, std::size_t n, unsigned max_degree) {
    SpherePolynomial f = random_holomorphic(rng, n, max_degree).restrict_to_sphere();
    if (uniform_int(rng, 0, 1) == 1 && max_degree >= 2) {
        const SpherePolynomial q = random_sphere_polynomial(rng, n, max_degree - 2, 2);
        f += q * (SpherePolynomial::sphere_relation(n) - SpherePolynomial::constant(n, ComplexRational(1)));
    }
    return f;
}

/// Random polynomial with strictly positive Szego residual.
inline SpherePolynomial random_nonmember(Rng& rng, std::size_t n, unsigned max_degree) {
    for (;;) {
        SpherePolynomial f = random_sphere_polynomial(rng, n, max_degree);
        if (!szego_residual(f).residual_sq.is_zero()) {
            return f;
        }
    }
}

/// Point of C^n with |z| = radius in a uniformly random direction.
inline CPoint random_point(Rng& rng, std::size_t n, double radius) {
    const SphereSampler directions(n, rng());
    return directions.sample_at(0).point().scaled(radius);
}

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct VerifyReport {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::vector<CheckResult> checks;

    bool passed() const {
        for (const auto& c : checks) {
            if (!c.passed) {
                return false;
            }
        }
        return true;
    }
};

/// Randomized property checks of the trace criterion and its numerical
/// cross-checks in dimension n. Deterministic in (n, seed, samples).
inline VerifyReport verify(std::size_t n, std::uint64_t seed, std::uint64_t samples) {
    if (n == 0) {
        throw Error(ErrorKind::usage, "dimension must be positive");
    }
    if (samples < 2) {
        throw Error(ErrorKind::usage, "verify needs at least 2 samples");
    }
    VerifyReport report{n, seed, samples, {}};
    Rng rng(seed);
    SphereSampler sampler(n, seed);

    {
        CheckResult c{"forward: holomorphic polynomials satisfy every condition", true, ""};
        for (int i = 0; i < 20 && c.passed; ++i) {
            const SpherePolynomial f = random_holomorphic(rng, n, 4).restrict_to_sphere();
            const auto violations = sweep(f, f.total_degree() + 2);
            if (!violations.empty() || !szego_residual(f).residual_sq.is_zero()) {
                c.passed = false;
                c.detail = "case " + std::to_string(i) + " reported a violation or nonzero residual";
            }
        }
        report.checks.push_back(c);
    }
    {
        CheckResult c{"backward: non-members receive a violated condition", true, ""};
        unsigned max_order = 0;
        for (int i = 0; i < 20 && c.passed; ++i) {
            const SpherePolynomial f = random_nonmember(rng, n, 4);
            const auto cert = is_boundary_trace(f, 0);
            if (cert.member || !cert.violation || cert.violation->satisfied) {
                c.passed = false;
                c.detail = "case " + std::to_string(i) + " has no violation certificate";
            } else {
                max_order = std::max(max_order, *cert.violation_order);
            }
        }
        if (c.passed) {
            c.detail = "max escalation order " + std::to_string(max_order);
        }
        report.checks.push_back(c);
    }
    {
        CheckResult c{"sphere relation: multiplying by |zeta|^2 keeps the decision and witness", true, ""};
        const SpherePolynomial one = SpherePolynomial::sphere_relation(n);
        for (int i = 0; i < 10 && c.passed; ++i) {
            const SpherePolynomial f = uniform_int(rng, 0, 1) == 0 ? random_member(rng, n, 3)
                                                                   : random_sphere_polynomial(rng, n, 3);
            const auto a = is_boundary_trace(f, 0);
            const auto b = is_boundary_trace(f * one, 0);
            if (a.member != b.member || (a.member && !(*a.witness_extension == *b.witness_extension))) {
                c.passed = false;
                c.detail = "case " + std::to_string(i) + " changed under the sphere relation";
            }
        }
        report.checks.push_back(c);
    }
    {
        CheckResult c{"exact monomial integrals agree with Monte-Carlo within 4 standard errors", true, ""};
        for (int i = 0; i < 5 && c.passed; ++i) {
            const MultiIndex omega = random_index(rng, n, uniform_int(rng, 0, 3));
            const MultiIndex upsilon = uniform_int(rng, 0, 1) == 0 ? omega : random_index(rng, n, uniform_int(rng, 0, 3));
            const double exact = to_float(monomial_integral(omega, upsilon));
            const MCEstimate est = mc_mean(sampler, samples, [&](const SpherePoint& z) {
                return monomial_eval(z.point(), omega, upsilon);
            });
            if (!est.agrees_with(exact)) {
                c.passed = false;
                c.detail = "pair " + omega.to_string() + ", " + upsilon.to_string() + " deviates by " +
                           std::to_string(est.deviation_from(exact)) + " standard errors";
            }
        }
        report.checks.push_back(c);
    }
    {
        CheckResult c{"Poisson and Cauchy integrals agree on members", true, ""};
        for (int i = 0; i < 3 && c.passed; ++i) {
            const SpherePolynomial f = random_member(rng, n, 3);
            const HolomorphicPolynomial g = cauchy_transform_poly(f);
            for (int k = 0; k < 2 && c.passed; ++k) {
                const CPoint z = random_point(rng, n, 0.6 * uniform_real(rng));
                const MCEstimate est =
                    poisson_transform_mc([&](const SpherePoint& zeta) { return f.eval(zeta.point()); }, z, sampler, samples);
                if (!est.agrees_with(eval_holo(g, z))) {
                    c.passed = false;
                    c.detail = "case " + std::to_string(i) + " deviates by " +
                               std::to_string(est.deviation_from(eval_holo(g, z))) + " standard errors";
                }
            }
        }
        report.checks.push_back(c);
    }
    {
        CheckResult c{"Cauchy kernel series stays within its tail bound", true, ""};
        for (int i = 0; i < 20 && c.passed; ++i) {
            const CPoint z = random_point(rng, n, 0.9 * uniform_real(rng));
            const CPoint w = random_point(rng, n, 0.9 * uniform_real(rng));
            const unsigned order = uniform_int(rng, 0, 20);
            const SeriesValue s = cauchy_series(z, w, order);
            const double gap = std::abs(s.value - cauchy_kernel(z, w));
            const double r = norm(z) * norm(w);
            const double closed_form_rounding =
                16.0 * (n + 2.0) * std::numeric_limits<double>::epsilon() * std::pow(1.0 - r, -static_cast<double>(n));
            if (gap > s.truncation.tail_bound + s.truncation.rounding_bound + closed_form_rounding) {
                c.passed = false;
                c.detail = "pair " + std::to_string(i) + " exceeds the bound";
            }
        }
        report.checks.push_back(c);
    }
    return report;
}

} // namespace hardy::selftest
