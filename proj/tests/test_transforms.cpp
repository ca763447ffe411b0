#include "hardy/selftest.hpp"
#include "hardy/transforms.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using hardy::ComplexFloat;
using hardy::ComplexRational;
using hardy::CPoint;
using hardy::Error;
using hardy::ErrorKind;
using hardy::HolomorphicPolynomial;
using hardy::MultiIndex;
using hardy::Rational;
using hardy::SpherePoint;
using hardy::SpherePolynomial;
using hardy::SphereSampler;

namespace {

SpherePolynomial conj_coordinate(std::size_t n, std::size_t k) {
    return SpherePolynomial::monomial(MultiIndex(n), MultiIndex::unit(n, k));
}

// C[f] integrated term by term against the kernel series:
// coefficient of z^w is c_w^-1 times the moment with conj(zeta)^w
HolomorphicPolynomial kernel_expansion_oracle(const SpherePolynomial& f) {
    const std::size_t n = f.dimension();
    HolomorphicPolynomial g(n);
    for (const auto& w : hardy::enumerate_upto(n, f.total_degree())) {
        g.add_term(w, ComplexRational(hardy::c_constant(w).inverse()) * hardy::moment(f, MultiIndex(n), w));
    }
    return g;
}

// (1-|z|^2)^n sum_{|u|,|w| <= N} c_w^-1 c_u^-1 z^w conj(z)^u M(u, w; f)
ComplexFloat poisson_double_series(const SpherePolynomial& f, const CPoint& z, unsigned order) {
    const std::size_t n = f.dimension();
    const MultiIndex zero(n);
    const auto indices = hardy::enumerate_upto(n, order);
    ComplexFloat total{};
    for (const auto& u : indices) {
        for (const auto& w : indices) {
            const ComplexRational m = hardy::moment(f, u, w);
            if (m.is_zero()) {
                continue;
            }
            const double weight =
                (hardy::c_constant(w).inverse() * hardy::c_constant(u).inverse()).to_double();
            total += weight * hardy::to_float(m) * hardy::monomial_eval(z, w, zero) *
                     std::conj(hardy::monomial_eval(z, u, zero));
        }
    }
    return std::pow(1.0 - hardy::norm_sq(z), static_cast<double>(n)) * total;
}

HolomorphicPolynomial holo_monomial(const MultiIndex& mu, const ComplexRational& b = ComplexRational(1)) {
    HolomorphicPolynomial g(mu.dimension());
    g.add_term(mu, b);
    return g;
}

} // namespace

TEST_CASE("Cauchy transform of polynomial data", "[transforms]") {
    const MultiIndex mu{2, 1};
    CHECK(hardy::cauchy_transform_poly(SpherePolynomial::monomial(mu, MultiIndex(2))) == holo_monomial(mu));
    CHECK(hardy::cauchy_transform_poly(conj_coordinate(2, 0)).is_zero());
    const SpherePolynomial abs1 = SpherePolynomial::monomial(MultiIndex{1, 0}, MultiIndex{1, 0});
    CHECK(hardy::cauchy_transform_poly(abs1) == holo_monomial(MultiIndex{0, 0}, ComplexRational(Rational(1, 2))));
    // c_mu / c_{mu - nu} for zeta1^2 conj(zeta1) in n = 2: (1/3) / (1/2) z1
    const SpherePolynomial t = SpherePolynomial::monomial(MultiIndex{2, 0}, MultiIndex{1, 0});
    CHECK(hardy::cauchy_transform_poly(t) == holo_monomial(MultiIndex{1, 0}, ComplexRational(Rational(2, 3))));
}

TEST_CASE("Cauchy transform agrees with the term-by-term kernel expansion", "[transforms][property]") {
    hardy::selftest::Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = hardy::selftest::uniform_int(rng, 1, 3);
        const SpherePolynomial f = hardy::selftest::random_sphere_polynomial(rng, n, 5);
        CHECK(hardy::cauchy_transform_poly(f) == kernel_expansion_oracle(f));
    }
}

TEST_CASE("holomorphic evaluation", "[transforms]") {
    CHECK(hardy::eval_holo(holo_monomial(MultiIndex{1, 0}), CPoint{0.5, 0.0}) == ComplexFloat(0.5));
    CHECK(hardy::eval_holo(holo_monomial(MultiIndex{0, 0}), CPoint{0.3, -0.7}) == ComplexFloat(1.0));
    CHECK(hardy::eval_holo(HolomorphicPolynomial(2), CPoint{0.3, -0.7}) == ComplexFloat(0.0));
}

TEST_CASE("Monte-Carlo Cauchy transform", "[transforms]") {
    SphereSampler s(2, 51);
    const auto one = hardy::cauchy_transform_mc([](const SpherePoint&) { return ComplexFloat(1.0); },
                                                CPoint{0.2, ComplexFloat(0.0, 0.4)}, s, 200'000);
    CHECK(one.agrees_with(1.0));
    const auto conj1 = hardy::cauchy_transform_mc([](const SpherePoint& z) { return std::conj(z[0]); },
                                                  CPoint{0.3, ComplexFloat(0.0, 0.1)}, s, 200'000);
    CHECK(conj1.agrees_with(0.0));
    const auto z1 = hardy::cauchy_transform_mc([](const SpherePoint& z) { return z[0]; }, CPoint{0.5, 0.0}, s, 200'000);
    CHECK(z1.agrees_with(0.5));

    // the ζ1 conj(ζ1) closed form 1/2 at an interior point
    const auto abs1 = hardy::cauchy_transform_mc([](const SpherePoint& z) { return ComplexFloat(std::norm(z[0])); },
                                                 CPoint{0.1, 0.4}, s, 200'000);
    CHECK(abs1.agrees_with(0.5));

    try {
        (void)hardy::cauchy_transform_mc([](const SpherePoint&) { return ComplexFloat(1.0); }, CPoint{1.0, 0.0}, s, 10);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::domain);
    }
    CHECK_THROWS_AS(hardy::cauchy_transform_mc([](const SpherePoint&) { return ComplexFloat(NAN); }, CPoint{0.1, 0.0},
                                               s, 10),
                    Error);
}

TEST_CASE("Monte-Carlo Poisson transform", "[transforms]") {
    SphereSampler s(2, 52);
    const auto one = hardy::poisson_transform_mc([](const SpherePoint&) { return ComplexFloat(1.0); },
                                                 CPoint{0.2, ComplexFloat(0.0, 0.4)}, s, 200'000);
    CHECK(one.agrees_with(1.0));
    const auto conj1 =
        hardy::poisson_transform_mc([](const SpherePoint& z) { return std::conj(z[0]); }, CPoint{0.5, 0.0}, s, 200'000);
    CHECK(conj1.agrees_with(0.5));

    // at the origin the kernel is identically 1, so the estimate is the plain sample mean
    SphereSampler a(2, 53);
    SphereSampler b(2, 53);
    auto g = [](const SpherePoint& z) { return z[0] * z[0] + std::conj(z[1]); };
    const auto at_origin = hardy::poisson_transform_mc(g, CPoint::zero(2), a, 50'000);
    const auto mean = hardy::mc_mean(b, 50'000, g);
    CHECK(at_origin.value == mean.value);
    CHECK(at_origin.std_error == mean.std_error);

    CHECK_THROWS_AS(hardy::poisson_transform_mc(g, CPoint{0.8, 0.8}, s, 10), Error);
    CHECK_THROWS_AS(hardy::poisson_transform_mc(g, CPoint{0.1}, s, 10), Error);
}

TEST_CASE("Poisson series examples", "[transforms]") {
    const SpherePolynomial one = SpherePolynomial::constant(2, ComplexRational(1));
    for (unsigned order : {0U, 1U, 5U}) {
        const auto v = hardy::poisson_series_eval(one, CPoint{0.3, 0.1}, order);
        CHECK(std::abs(v.value - 1.0) <= v.tail_bound + 1e-14);
    }
    CHECK(std::abs(hardy::poisson_series_eval(one, CPoint{0.3, 0.1}, 200).value - 1.0) <= 1e-13);

    const SpherePolynomial z1 = SpherePolynomial::coordinate(2, 0);
    const auto low = hardy::poisson_series_eval(z1, CPoint{0.5, 0.0}, 4);
    CHECK(std::abs(low.value - 0.5) <= low.tail_bound);
    const auto high = hardy::poisson_series_eval(z1, CPoint{0.5, 0.0}, 80);
    CHECK(std::abs(high.value - 0.5) <= 1e-12);

    const auto c12 = hardy::poisson_series_eval(conj_coordinate(2, 0), CPoint{0.5, 0.0}, 12);
    CHECK(c12.order == 12);
    CHECK(std::abs(c12.value - 0.5) <= c12.tail_bound + 1e-14);
    CHECK(c12.tail_bound < 0.02);

    try {
        (void)hardy::poisson_series_eval(z1, CPoint{0.8, 0.7}, 4);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::domain);
    }
}

TEST_CASE("Poisson series matches the brute-force double series", "[transforms][property]") {
    hardy::selftest::Rng rng(42);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = hardy::selftest::uniform_int(rng, 1, 3);
        const SpherePolynomial f = hardy::selftest::random_sphere_polynomial(rng, n, 4, 3);
        const CPoint z = hardy::selftest::random_point(rng, n, 0.8 * hardy::selftest::uniform_real(rng));
        const unsigned order = hardy::selftest::uniform_int(rng, 0, n == 3 ? 5 : 7);
        const auto fast = hardy::poisson_series_eval(f, z, order);
        const ComplexFloat slow = poisson_double_series(f, z, order);
        INFO("case " << i << " n=" << n << " N=" << order);
        CHECK(std::abs(fast.value - slow) <= 1e-11 * std::max(1.0, std::abs(slow)));
    }
}

TEST_CASE("Poisson series tail bound covers the truncation error", "[transforms][property]") {
    hardy::selftest::Rng rng(43);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = hardy::selftest::uniform_int(rng, 1, 3);
        const SpherePolynomial f = hardy::selftest::random_sphere_polynomial(rng, n, 4, 3);
        const CPoint z = hardy::selftest::random_point(rng, n, 0.7 * hardy::selftest::uniform_real(rng));
        const unsigned order = hardy::selftest::uniform_int(rng, 0, 30);
        const auto v = hardy::poisson_series_eval(f, z, order);
        // reference: the same series far past the point where its tail is negligible
        const auto ref = hardy::poisson_series_eval(f, z, 400);
        REQUIRE(ref.tail_bound < 1e-14);
        const hardy::PoissonSeries plan(f, hardy::norm_sq(z), order);
        CHECK(v.tail_bound <= plan.uniform_tail_bound() * (1.0 + 1e-12) + 1e-300);
        INFO("case " << i << " N=" << order << " gap=" << std::abs(v.value - ref.value));
        CHECK(std::abs(v.value - ref.value) <= v.tail_bound + 1e-12);
    }
}

TEST_CASE("Poisson series reproduces holomorphic data", "[transforms][property]") {
    hardy::selftest::Rng rng(44);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = hardy::selftest::uniform_int(rng, 1, 3);
        const HolomorphicPolynomial g = hardy::selftest::random_holomorphic(rng, n, 4);
        const SpherePolynomial f = g.restrict_to_sphere();
        CHECK(hardy::cauchy_transform_poly(f) == g);
        const CPoint z = hardy::selftest::random_point(rng, n, 0.6 * hardy::selftest::uniform_real(rng));
        const auto v = hardy::poisson_series_eval(f, z, 200);
        CHECK(std::abs(v.value - hardy::eval_holo(g, z)) <= v.tail_bound + 1e-11);
    }
}

TEST_CASE("Cauchy projection is idempotent and respects the sphere relation", "[transforms][property]") {
    hardy::selftest::Rng rng(45);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = hardy::selftest::uniform_int(rng, 1, 3);
        const SpherePolynomial f = hardy::selftest::random_sphere_polynomial(rng, n, 4);
        const HolomorphicPolynomial g = hardy::cauchy_transform_poly(f);
        CHECK(hardy::cauchy_transform_poly(g.restrict_to_sphere()) == g);
        const HolomorphicPolynomial h = hardy::cauchy_transform_poly(f * SpherePolynomial::sphere_relation(n));
        CHECK(hardy::l2_norm_sq(h.restrict_to_sphere() - g.restrict_to_sphere()) == Rational(0));
    }
}

TEST_CASE("Poisson order selection", "[transforms]") {
    const SpherePolynomial f = conj_coordinate(2, 0);
    for (double r : {0.0, 0.5, 0.9}) {
        const unsigned order = hardy::poisson_order_for(f, r, 1e-8);
        CHECK(hardy::PoissonSeries(f, r * r, order).uniform_tail_bound() <= 1e-8);
        if (order > 1) {
            CHECK(hardy::PoissonSeries(f, r * r, order - 1).uniform_tail_bound() > 1e-8);
        }
    }
    CHECK_THROWS_AS(hardy::poisson_order_for(f, 1.0, 1e-8), Error);
}

TEST_CASE("radial scan of conj(zeta1)", "[transforms]") {
    const SpherePolynomial f = conj_coordinate(2, 0);
    SphereSampler s(2, 2024);
    const std::vector<double> radii{0.5, 0.9, 0.99};
    const auto rows = hardy::radial_scan(f, 2.0, radii, s, 100'000);
    REQUIRE(rows.size() == 3);
    const double norm_f = std::sqrt(hardy::l2_norm_sq(f).to_double());
    for (const auto& row : rows) {
        const double expected = (1.0 - row.r) / std::sqrt(2.0);
        INFO("r=" << row.r << " lp_error=" << row.lp_error << " stderr=" << row.lp_error_stderr);
        CHECK(std::abs(row.lp_error - expected) <= 4.0 * row.lp_error_stderr);
        CHECK(row.lp_error >= 0.0);
        CHECK(row.lp_norm_r <= norm_f + 4.0 * row.lp_norm_r_stderr);
        CHECK(row.samples == 100'000);
        CHECK(row.seed == 2024);
        CHECK(row.p == 2.0);
    }
    CHECK(rows[1].lp_error < rows[0].lp_error);
    CHECK(rows[2].lp_error < rows[1].lp_error);
    CHECK(std::abs(rows[1].lp_error - 0.0707) < 0.001);
}

TEST_CASE("radial scan of zeta1 and norm growth for holomorphic data", "[transforms]") {
    SphereSampler s(2, 7);
    const std::vector<double> radii{0.5, 0.9, 0.99};
    const auto rows = hardy::radial_scan(SpherePolynomial::coordinate(2, 0), 2.0, radii, s, 50'000);
    for (const auto& row : rows) {
        CHECK(std::abs(row.lp_error - (1.0 - row.r) / std::sqrt(2.0)) <= 4.0 * row.lp_error_stderr);
    }

    hardy::selftest::Rng rng(46);
    for (int i = 0; i < 5; ++i) {
        const HolomorphicPolynomial g = hardy::selftest::random_holomorphic(rng, 2, 3);
        const SpherePolynomial f = g.restrict_to_sphere();
        SphereSampler sampler(2, 100 + i);
        const auto scan = hardy::radial_scan(f, 2.0, radii, sampler, 50'000);
        const double exact_norm = std::sqrt(hardy::l2_norm_sq(f).to_double());
        for (std::size_t k = 0; k + 1 < scan.size(); ++k) {
            CHECK(scan[k + 1].lp_norm_r + 4.0 * scan[k + 1].lp_norm_r_stderr >= scan[k].lp_norm_r);
            CHECK(scan[k + 1].lp_error < scan[k].lp_error + 4.0 * scan[k].lp_error_stderr);
        }
        CHECK(std::abs(scan.back().lp_norm_r - exact_norm) <= 0.02 * exact_norm + 4.0 * scan.back().lp_norm_r_stderr);
    }
}

TEST_CASE("radial scan with p = 1 and p = 4", "[transforms]") {
    const SpherePolynomial f = conj_coordinate(2, 0);
    const std::vector<double> radii{0.5, 0.9};
    for (double p : {1.0, 4.0}) {
        SphereSampler s(2, 3);
        const auto rows = hardy::radial_scan(f, p, radii, s, 50'000);
        // P[f]_r = r conj(zeta1), so on shared samples the error is (1 - r)/r times the norm
        for (const auto& row : rows) {
            CHECK(row.lp_error == Catch::Approx((1.0 - row.r) / row.r * row.lp_norm_r).epsilon(1e-6));
        }
    }
}

TEST_CASE("radial scan rejects bad parameters and is deterministic", "[transforms]") {
    const SpherePolynomial f = conj_coordinate(2, 0);
    SphereSampler s(2, 1);
    const std::vector<double> bad_r{1.0};
    const std::vector<double> good_r{0.5};
    CHECK_THROWS_AS(hardy::radial_scan(f, 2.0, bad_r, s, 100), Error);
    CHECK_THROWS_AS(hardy::radial_scan(f, 0.5, good_r, s, 100), Error);
    CHECK_THROWS_AS(hardy::radial_scan(f, 2.0, good_r, s, 1), Error);
    SphereSampler wrong(3, 1);
    CHECK_THROWS_AS(hardy::radial_scan(f, 2.0, good_r, wrong, 100), Error);

    SphereSampler a(2, 99);
    SphereSampler b(2, 99);
    const auto ra = hardy::radial_scan(f, 2.0, good_r, a, 40'000);
    const auto rb = hardy::radial_scan(f, 2.0, good_r, b, 40'000);
    CHECK(ra[0].lp_error == rb[0].lp_error);
    CHECK(ra[0].lp_norm_r == rb[0].lp_norm_r);
}
