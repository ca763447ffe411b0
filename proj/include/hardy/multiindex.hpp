#pragma once

#include "hardy/error.hpp"
#include "hardy/exactnum.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace hardy {

/// Exponent vector alpha = (alpha_1, ..., alpha_n) of nonnegative integers.
///
/// The dimension n is fixed at construction and every binary operation
/// checks it. Ordering is graded lexicographic: lower total degree first,
/// and within one degree the lexicographically larger tuple first, so that
/// (1,0) precedes (0,1).
class MultiIndex {
public:
    explicit MultiIndex(std::size_t dimension) : components_(dimension, 0) {
        if (dimension == 0) {
            throw Error(ErrorKind::construction, "multi-index dimension must be positive");
        }
    }
    MultiIndex(std::initializer_list<unsigned> components) : components_(components) {
        if (components_.empty()) {
            throw Error(ErrorKind::construction, "multi-index dimension must be positive");
        }
    }
    explicit MultiIndex(std::vector<unsigned> components) : components_(std::move(components)) {
        if (components_.empty()) {
            throw Error(ErrorKind::construction, "multi-index dimension must be positive");
        }
    }

    /// e_k, the k-th unit index (zero-based k).
    static MultiIndex unit(std::size_t dimension, std::size_t k) {
        MultiIndex e(dimension);
        e.components_.at(k) = 1;
        return e;
    }

    std::size_t dimension() const noexcept { return components_.size(); }
    unsigned operator[](std::size_t k) const { return components_[k]; }
    unsigned& operator[](std::size_t k) { return components_[k]; }
    std::span<const unsigned> components() const noexcept { return components_; }

    unsigned degree() const noexcept {
        return std::accumulate(components_.begin(), components_.end(), 0U);
    }

    bool is_zero() const noexcept {
        return std::all_of(components_.begin(), components_.end(), [](unsigned c) { return c == 0; });
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
        if (auto c = a.dimension() <=> b.dimension(); c != 0) {
            return c;
        }
        if (auto c = a.degree() <=> b.degree(); c != 0) {
            return c;
        }
        // larger tuple first within a degree
        return b.components_ <=> a.components_;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t k = 0; k < components_.size(); ++k) {
            if (k != 0) {
                s += ",";
            }
            s += std::to_string(components_[k]);
        }
        return s + ")";
    }

    friend std::ostream& operator<<(std::ostream& os, const MultiIndex& a) { return os << a.to_string(); }

private:
    std::vector<unsigned> components_;
};

inline void require_same_dimension(const MultiIndex& a, const MultiIndex& b) {
    if (a.dimension() != b.dimension()) {
        throw Error(ErrorKind::dimension_mismatch,
                    "multi-index dimensions differ: " + a.to_string() + " vs " + b.to_string());
    }
}

inline unsigned degree(const MultiIndex& a) { return a.degree(); }

inline BigInt factorial(unsigned k) {
    BigInt f = 1;
    for (unsigned i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

/// alpha! = alpha_1! ... alpha_n!
inline BigInt factorial(const MultiIndex& a) {
    BigInt f = 1;
    for (unsigned c : a.components()) {
        for (unsigned i = 2; i <= c; ++i) {
            f *= i;
        }
    }
    return f;
}

inline MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
    require_same_dimension(a, b);
    MultiIndex s = a;
    for (std::size_t k = 0; k < a.dimension(); ++k) {
        s[k] += b[k];
    }
    return s;
}

inline MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) { return add(a, b); }

/// True iff alpha_j <= beta_j for every j.
inline bool dominates(const MultiIndex& beta, const MultiIndex& alpha) {
    require_same_dimension(beta, alpha);
    for (std::size_t k = 0; k < beta.dimension(); ++k) {
        if (alpha[k] > beta[k]) {
            return false;
        }
    }
    return true;
}

/// beta - alpha; requires dominates(beta, alpha).
inline MultiIndex sub_checked(const MultiIndex& beta, const MultiIndex& alpha) {
    if (!dominates(beta, alpha)) {
        throw Error(ErrorKind::domination,
                    beta.to_string() + " does not dominate " + alpha.to_string());
    }
    MultiIndex d = beta;
    for (std::size_t k = 0; k < beta.dimension(); ++k) {
        d[k] -= alpha[k];
    }
    return d;
}

namespace detail {

inline void enumerate_degree(std::size_t pos, unsigned remaining, MultiIndex& current,
                             std::vector<MultiIndex>& out) {
    const std::size_t n = current.dimension();
    if (pos + 1 == n) {
        current[pos] = remaining;
        out.push_back(current);
        return;
    }
    for (unsigned v = remaining + 1; v-- > 0;) {
        current[pos] = v;
        enumerate_degree(pos + 1, remaining - v, current, out);
    }
    current[pos] = 0;
}

} // namespace detail

/// All alpha in dimension n with |alpha| == degree, in graded-lex order.
inline std::vector<MultiIndex> enumerate_degree(std::size_t n, unsigned degree) {
    std::vector<MultiIndex> out;
    MultiIndex current(n);
    detail::enumerate_degree(0, degree, current, out);
    return out;
}

/// All alpha in dimension n with |alpha| <= max_degree, in graded-lex order.
/// The result has binomial(max_degree + n, n) entries.
inline std::vector<MultiIndex> enumerate_upto(std::size_t n, unsigned max_degree) {
    std::vector<MultiIndex> out;
    MultiIndex current(n);
    for (unsigned d = 0; d <= max_degree; ++d) {
        detail::enumerate_degree(0, d, current, out);
    }
    return out;
}

/// c_omega = (n-1)! omega! / (n-1+|omega|)!, which equals the integral of
/// |zeta^omega|^2 against normalized surface measure on the unit sphere.
inline Rational c_constant(const MultiIndex& omega) {
    const auto n = static_cast<unsigned>(omega.dimension());
    // (n-1)!/(n-1+|w|)! = 1 / (n (n+1) ... (n-1+|w|))
    BigInt rising = 1;
    for (unsigned i = n; i < n + omega.degree(); ++i) {
        rising *= i;
    }
    return {factorial(omega), rising};
}

} // namespace hardy
