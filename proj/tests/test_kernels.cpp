#include "hardy/kernels.hpp"
#include "hardy/montecarlo.hpp"
#include "hardy/multiindex.hpp"
#include "hardy/selftest.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using hardy::ComplexFloat;
using hardy::CPoint;
using hardy::Error;
using hardy::ErrorKind;
using hardy::SpherePoint;
using hardy::SphereSampler;

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// the truncated series summed index by index
ComplexFloat enumerated_series(const CPoint& z, const CPoint& w, unsigned order) {
    const std::size_t n = z.dimension();
    const hardy::MultiIndex zero(n);
    ComplexFloat total{};
    for (const auto& omega : hardy::enumerate_upto(n, order)) {
        const double inv_c = hardy::c_constant(omega).inverse().to_double();
        total += inv_c * hardy::monomial_eval(z, omega, zero) * std::conj(hardy::monomial_eval(w, omega, zero));
    }
    return total;
}

// sum_{N < j <= 10N} binomial(j+n-1, n-1) r^j in long double
long double brute_tail(double r, unsigned order, std::size_t n) {
    long double total = 0.0L;
    for (unsigned j = order + 1; j <= 10 * order; ++j) {
        long double term = std::pow(static_cast<long double>(r), j);
        for (std::size_t i = 1; i < n; ++i) {
            term *= static_cast<long double>(j + i) / static_cast<long double>(i);
        }
        total += term;
    }
    return total;
}

double closed_form_rounding(std::size_t n, double r) {
    return 16.0 * (static_cast<double>(n) + 2.0) * eps * std::pow(1.0 - r, -static_cast<double>(n));
}

} // namespace

TEST_CASE("Cauchy kernel closed form", "[kernels]") {
    CHECK(hardy::cauchy_kernel(CPoint::zero(3), CPoint{0.3, 0.2, 0.1}) == ComplexFloat(1.0));
    const CPoint z{0.5, 0.0};
    CHECK(std::abs(hardy::cauchy_kernel(z, z) - 16.0 / 9.0) <= 4 * eps);

    const ComplexFloat a(0.3, 0.4);
    const ComplexFloat b(-0.2, 0.5);
    CHECK(std::abs(hardy::cauchy_kernel(CPoint{a}, CPoint{b}) - 1.0 / (1.0 - a * std::conj(b))) <= 4 * eps);

    try {
        (void)hardy::cauchy_kernel(CPoint{1.0, 0.0}, CPoint{1.0, 0.0});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::singularity);
    }
}

TEST_CASE("Cauchy series converges to 16/9", "[kernels]") {
    const CPoint z{0.5, 0.0};
    const auto s = hardy::cauchy_series(z, z, 30);
    CHECK(s.truncation.order == 30);
    CHECK(std::abs(s.value - 16.0 / 9.0) <= s.truncation.tail_bound + s.truncation.rounding_bound);
    CHECK(s.truncation.tail_bound < 1e-7);

    // sum (j+1)/4^j for j <= N, exactly as a rational
    hardy::Rational partial;
    for (unsigned j = 0; j <= 30; ++j) {
        partial += hardy::Rational(hardy::BigInt(j + 1), hardy::BigInt(1) << (2 * j));
    }
    CHECK(std::abs(s.value - partial.to_double()) <= 8 * eps);
}

TEST_CASE("Cauchy series at the origin", "[kernels]") {
    const auto s = hardy::cauchy_series(CPoint::zero(2), CPoint{0.9, 0.1}, 7);
    CHECK(s.value == ComplexFloat(1.0));
    CHECK(s.truncation.tail_bound == 0.0);
}

TEST_CASE("Cauchy series diverges outside the polydisc of convergence", "[kernels]") {
    try {
        (void)hardy::cauchy_series(CPoint{1.0, 0.0}, CPoint{1.0, 0.0}, 5);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::divergence);
    }
}

TEST_CASE("Poisson kernel", "[kernels]") {
    SphereSampler s(2, 12);
    for (int i = 0; i < 50; ++i) {
        const SpherePoint zeta = s.sample();
        CHECK(hardy::poisson_kernel(CPoint::zero(2), zeta) == 1.0);
        const CPoint z{0.4, ComplexFloat(0.0, -0.3)};
        CHECK(hardy::poisson_kernel(z, zeta) > 0.0);
    }
    try {
        (void)hardy::poisson_kernel(CPoint{1.0, 0.0}, SpherePoint{0.0, 1.0});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::domain);
    }
}

TEST_CASE("Poisson kernel integrates to one", "[kernels]") {
    SphereSampler s(2, 3);
    const CPoint z{0.3, ComplexFloat(0.1, 0.2)};
    const auto est = hardy::mc_mean(s, 1'000'000, [&](const SpherePoint& zeta) {
        return ComplexFloat(hardy::poisson_kernel(z, zeta));
    });
    CHECK(est.agrees_with(1.0));
}

TEST_CASE("series tail bound", "[kernels]") {
    CHECK(hardy::series_tail_bound(0.0, 5, 2) == 0.0);
    CHECK_THROWS_AS(hardy::series_tail_bound(1.0, 5, 2), Error);
    CHECK_THROWS_AS(hardy::series_tail_bound(-0.1, 5, 2), Error);
    // ratio bound unusable: falls back to the full sum
    CHECK(hardy::series_tail_bound(0.9, 0, 3) == Catch::Approx(std::pow(0.1, -3.0)));
}

TEST_CASE("tail bound dominates the brute-force tail", "[kernels][property]") {
    hardy::selftest::Rng rng(64);
    for (int i = 0; i < 300; ++i) {
        const double r = 0.95 * hardy::selftest::uniform_real(rng);
        const unsigned order = hardy::selftest::uniform_int(rng, 1, 40);
        const std::size_t n = hardy::selftest::uniform_int(rng, 1, 4);
        const double bound = hardy::series_tail_bound(r, order, n);
        const long double tail = brute_tail(r, order, n);
        INFO("r=" << r << " N=" << order << " n=" << n);
        CHECK(static_cast<long double>(bound) * (1.0L + 1e-12L) >= tail);
    }
}

TEST_CASE("tail bound is nonincreasing in the order", "[kernels][property]") {
    hardy::selftest::Rng rng(65);
    for (int i = 0; i < 100; ++i) {
        const double r = 0.95 * hardy::selftest::uniform_real(rng);
        const std::size_t n = hardy::selftest::uniform_int(rng, 1, 4);
        double previous = hardy::series_tail_bound(r, 0, n);
        for (unsigned order = 1; order <= 60; ++order) {
            const double b = hardy::series_tail_bound(r, order, n);
            CHECK(b <= previous);
            previous = b;
        }
    }
}

TEST_CASE("grouped series equals the index-enumerated series", "[kernels][property]") {
    hardy::selftest::Rng rng(66);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = hardy::selftest::uniform_int(rng, 1, 3);
        const CPoint z = hardy::selftest::random_point(rng, n, 0.9 * hardy::selftest::uniform_real(rng));
        const CPoint w = hardy::selftest::random_point(rng, n, 0.9 * hardy::selftest::uniform_real(rng));
        const unsigned order = hardy::selftest::uniform_int(rng, 0, 12);
        const auto grouped = hardy::cauchy_series(z, w, order);
        const ComplexFloat direct = enumerated_series(z, w, order);
        CHECK(std::abs(grouped.value - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("series stays within tail and rounding bounds", "[kernels][property]") {
    hardy::selftest::Rng rng(67);
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = hardy::selftest::uniform_int(rng, 1, 3);
        const CPoint z = hardy::selftest::random_point(rng, n, 0.95 * hardy::selftest::uniform_real(rng));
        const CPoint w = hardy::selftest::random_point(rng, n, 0.95 * hardy::selftest::uniform_real(rng));
        const unsigned order = hardy::selftest::uniform_int(rng, 0, 40);
        const auto s = hardy::cauchy_series(z, w, order);
        const double r = hardy::norm(z) * hardy::norm(w);
        CHECK(s.truncation.tail_bound == hardy::series_tail_bound(r, order, n));
        const double gap = std::abs(s.value - hardy::cauchy_kernel(z, w));
        INFO("n=" << n << " N=" << order << " r=" << r << " gap=" << gap);
        CHECK(gap <= s.truncation.tail_bound + s.truncation.rounding_bound + closed_form_rounding(n, r));
    }
}

TEST_CASE("kernel symmetry and factorization", "[kernels][property]") {
    hardy::selftest::Rng rng(68);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = hardy::selftest::uniform_int(rng, 1, 4);
        const CPoint z = hardy::selftest::random_point(rng, n, 0.9 * hardy::selftest::uniform_real(rng));
        const CPoint w = hardy::selftest::random_point(rng, n, 0.9 * hardy::selftest::uniform_real(rng));
        CHECK(std::abs(hardy::cauchy_kernel(z, w) - std::conj(hardy::cauchy_kernel(w, z))) <= 1e-12);

        const SpherePoint zeta(hardy::selftest::random_point(rng, n, 1.0));
        const double p = hardy::poisson_kernel(z, zeta);
        const ComplexFloat factored =
            hardy::cauchy_kernel(z, zeta) * hardy::cauchy_kernel(zeta, z) / hardy::cauchy_kernel(z, z);
        CHECK(std::abs(factored.imag()) <= 1e-10 * std::max(1.0, p));
        CHECK(std::abs(p - factored.real()) <= 1e-10 * std::max(1.0, p));
    }
}
