#pragma once

// Polynomials in zeta and conj(zeta) viewed as functions on the unit
// sphere, with exact integrals against sigma.
//
// The integral of zeta^w conj(zeta)^v over S is 0 unless w == v, in which
// case it is c_w. Every exact quantity below (moments, L^2 inner products,
// norms) is a finite linear combination of these values.

#include "hardy/error.hpp"
#include "hardy/exactnum.hpp"
#include "hardy/montecarlo.hpp"
#include "hardy/multiindex.hpp"
#include "hardy/sphere.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

namespace hardy {

/// Finite sum of a_{mu,nu} zeta^mu conj(zeta)^nu. Zero coefficients are
/// never stored. Polynomials that agree on S but differ as formal sums
/// (e.g. multiples of |zeta|^2 - 1) are kept distinct; compare them with
/// l2_norm_sq of the difference.
class SpherePolynomial {
public:
    using Key = std::pair<MultiIndex, MultiIndex>;
    using TermMap = std::map<Key, ComplexRational>;

    explicit SpherePolynomial(std::size_t dimension) : dimension_(dimension) {
        if (dimension == 0) {
            throw Error(ErrorKind::construction, "polynomial dimension must be positive");
        }
    }

    static SpherePolynomial constant(std::size_t dimension, const ComplexRational& value) {
        SpherePolynomial p(dimension);
        p.add_term(MultiIndex(dimension), MultiIndex(dimension), value);
        return p;
    }

    static SpherePolynomial monomial(const MultiIndex& mu, const MultiIndex& nu,
                                     const ComplexRational& coefficient = ComplexRational(1)) {
        SpherePolynomial p(mu.dimension());
        p.add_term(mu, nu, coefficient);
        return p;
    }

    /// zeta_k (zero-based k)
    static SpherePolynomial coordinate(std::size_t dimension, std::size_t k) {
        return monomial(MultiIndex::unit(dimension, k), MultiIndex(dimension));
    }

    /// |zeta_1|^2 + ... + |zeta_n|^2, identically 1 on S.
    static SpherePolynomial sphere_relation(std::size_t dimension) {
        SpherePolynomial p(dimension);
        for (std::size_t k = 0; k < dimension; ++k) {
            const auto e = MultiIndex::unit(dimension, k);
            p.add_term(e, e, ComplexRational(1));
        }
        return p;
    }

    std::size_t dimension() const noexcept { return dimension_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds coefficient * zeta^mu conj(zeta)^nu, merging with an existing term.
    void add_term(const MultiIndex& mu, const MultiIndex& nu, const ComplexRational& coefficient) {
        require_same_dimension(mu, nu);
        if (mu.dimension() != dimension_) {
            throw Error(ErrorKind::dimension_mismatch, "term dimension differs from polynomial dimension");
        }
        if (coefficient.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(Key{mu, nu}, coefficient);
        if (!inserted) {
            it->second += coefficient;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    /// Largest |mu| + |nu| over the terms; 0 for the zero polynomial.
    unsigned total_degree() const noexcept {
        unsigned d = 0;
        for (const auto& [key, _] : terms_) {
            d = std::max(d, key.first.degree() + key.second.degree());
        }
        return d;
    }

    /// True iff every term is free of conj(zeta).
    bool is_holomorphic() const noexcept {
        for (const auto& [key, _] : terms_) {
            if (!key.second.is_zero()) {
                return false;
            }
        }
        return true;
    }

    SpherePolynomial conjugate() const {
        SpherePolynomial p(dimension_);
        for (const auto& [key, a] : terms_) {
            p.add_term(key.second, key.first, a.conj());
        }
        return p;
    }

    SpherePolynomial& operator+=(const SpherePolynomial& o) {
        require_dimension(o);
        for (const auto& [key, a] : o.terms_) {
            add_term(key.first, key.second, a);
        }
        return *this;
    }
    SpherePolynomial& operator-=(const SpherePolynomial& o) {
        require_dimension(o);
        for (const auto& [key, a] : o.terms_) {
            add_term(key.first, key.second, -a);
        }
        return *this;
    }
    SpherePolynomial& operator*=(const ComplexRational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [_, a] : terms_) {
            a *= s;
        }
        return *this;
    }

    friend SpherePolynomial operator+(SpherePolynomial a, const SpherePolynomial& b) { return a += b; }
    friend SpherePolynomial operator-(SpherePolynomial a, const SpherePolynomial& b) { return a -= b; }
    friend SpherePolynomial operator*(SpherePolynomial a, const ComplexRational& s) { return a *= s; }
    friend SpherePolynomial operator*(const ComplexRational& s, SpherePolynomial a) { return a *= s; }

    friend SpherePolynomial operator*(const SpherePolynomial& a, const SpherePolynomial& b) {
        a.require_dimension(b);
        SpherePolynomial p(a.dimension_);
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                p.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
            }
        }
        return p;
    }

    /// Formal (coefficient-wise) equality, not equality as functions on S.
    friend bool operator==(const SpherePolynomial&, const SpherePolynomial&) = default;

    ComplexFloat eval(const CPoint& z) const {
        if (z.dimension() != dimension_) {
            throw Error(ErrorKind::dimension_mismatch, "point dimension differs from polynomial dimension");
        }
        ComplexFloat s{};
        for (const auto& [key, a] : terms_) {
            s += to_float(a) * monomial_eval(z, key.first, key.second);
        }
        return s;
    }

private:
    void require_dimension(const SpherePolynomial& o) const {
        if (o.dimension_ != dimension_) {
            throw Error(ErrorKind::dimension_mismatch, "polynomial dimensions differ");
        }
    }

    std::size_t dimension_;
    TermMap terms_;
};

/// Finite sum of b_mu z^mu.
class HolomorphicPolynomial {
public:
    using TermMap = std::map<MultiIndex, ComplexRational>;

    explicit HolomorphicPolynomial(std::size_t dimension) : dimension_(dimension) {
        if (dimension == 0) {
            throw Error(ErrorKind::construction, "polynomial dimension must be positive");
        }
    }

    std::size_t dimension() const noexcept { return dimension_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const MultiIndex& mu, const ComplexRational& coefficient) {
        if (mu.dimension() != dimension_) {
            throw Error(ErrorKind::dimension_mismatch, "term dimension differs from polynomial dimension");
        }
        if (coefficient.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(mu, coefficient);
        if (!inserted) {
            it->second += coefficient;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    /// The same polynomial as a function on S.
    SpherePolynomial restrict_to_sphere() const {
        SpherePolynomial p(dimension_);
        const MultiIndex zero(dimension_);
        for (const auto& [mu, b] : terms_) {
            p.add_term(mu, zero, b);
        }
        return p;
    }

    ComplexFloat eval(const CPoint& z) const {
        if (z.dimension() != dimension_) {
            throw Error(ErrorKind::dimension_mismatch, "point dimension differs from polynomial dimension");
        }
        const MultiIndex zero(dimension_);
        ComplexFloat s{};
        for (const auto& [mu, b] : terms_) {
            s += to_float(b) * monomial_eval(z, mu, zero);
        }
        return s;
    }

    friend bool operator==(const HolomorphicPolynomial&, const HolomorphicPolynomial&) = default;

private:
    std::size_t dimension_;
    TermMap terms_;
};

/// Integral of zeta^omega conj(zeta)^upsilon over S: c_omega if the
/// indices agree, else 0.
inline Rational monomial_integral(const MultiIndex& omega, const MultiIndex& upsilon) {
    require_same_dimension(omega, upsilon);
    if (omega != upsilon) {
        return {};
    }
    return c_constant(omega);
}

namespace detail {

// alpha + mu == beta + nu, componentwise
inline bool balanced(const MultiIndex& alpha, const MultiIndex& mu, const MultiIndex& beta,
                     const MultiIndex& nu) noexcept {
    for (std::size_t k = 0; k < alpha.dimension(); ++k) {
        if (alpha[k] + mu[k] != beta[k] + nu[k]) {
            return false;
        }
    }
    return true;
}

} // namespace detail

/// Integral of zeta^alpha conj(zeta)^beta f(zeta) over S, exact.
inline ComplexRational moment(const SpherePolynomial& f, const MultiIndex& alpha, const MultiIndex& beta) {
    require_same_dimension(alpha, beta);
    if (alpha.dimension() != f.dimension()) {
        throw Error(ErrorKind::dimension_mismatch, "moment index dimension differs from polynomial dimension");
    }
    ComplexRational sum;
    for (const auto& [key, a] : f.terms()) {
        if (detail::balanced(alpha, key.first, beta, key.second)) {
            sum += a * ComplexRational(c_constant(alpha + key.first));
        }
    }
    return sum;
}

/// Monte-Carlo estimate of the integral of zeta^alpha conj(zeta)^beta g(zeta).
template <class Function>
MCEstimate mc_moment(Function&& g, const MultiIndex& alpha, const MultiIndex& beta, SphereSampler& sampler,
                     std::uint64_t samples) {
    require_same_dimension(alpha, beta);
    if (alpha.dimension() != sampler.dimension()) {
        throw Error(ErrorKind::dimension_mismatch, "moment index dimension differs from sampler dimension");
    }
    return mc_mean(sampler, samples, [&](const SpherePoint& zeta) {
        const ComplexFloat gv = g(zeta);
        if (!is_finite(gv)) {
            return gv; // reported by mc_mean with the point attached
        }
        return monomial_eval(zeta, alpha, beta) * gv;
    });
}

/// <f, g> = integral of f conj(g) over S, exact.
inline ComplexRational inner_product(const SpherePolynomial& f, const SpherePolynomial& g) {
    if (f.dimension() != g.dimension()) {
        throw Error(ErrorKind::dimension_mismatch, "polynomial dimensions differ");
    }
    ComplexRational sum;
    for (const auto& [kf, a] : f.terms()) {
        for (const auto& [kg, b] : g.terms()) {
            // f conj(g) term: zeta^(mu+nu') conj(zeta)^(nu+mu')
            if (detail::balanced(kf.first, kg.second, kf.second, kg.first)) {
                sum += a * b.conj() * ComplexRational(c_constant(kf.first + kg.second));
            }
        }
    }
    return sum;
}

/// ||f||_2^2 over sigma, exact.
inline Rational l2_norm_sq(const SpherePolynomial& f) { return inner_product(f, f).re; }

inline ComplexFloat eval(const SpherePolynomial& f, const SpherePoint& zeta) { return f.eval(zeta.point()); }

} // namespace hardy
