#pragma once

// Seeded Monte-Carlo estimation over sigma.
//
// Chunking contract: a request for N draws reserves the index range
// [first, first + N) of the sampler stream and splits it into consecutive
// chunks of `chunk_size` draws. Chunk c covers [first + c*chunk_size, ...).
// Chunks may be evaluated on any thread; their partial statistics are
// merged strictly in chunk order, so results are bit-identical regardless
// of the worker count.

#include "hardy/error.hpp"
#include "hardy/exactnum.hpp"
#include "hardy/sphere.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

namespace hardy {

struct MCEstimate {
    ComplexFloat value{};
    double std_error = 0.0; // standard error of the complex mean: sqrt((var_re + var_im) / N)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    /// |value - expected| measured in standard errors; 0/0 counts as 0.
    double deviation_from(ComplexFloat expected) const {
        const double d = std::abs(value - expected);
        if (d == 0.0) {
            return 0.0;
        }
        return std_error > 0.0 ? d / std_error : std::numeric_limits<double>::infinity();
    }

    bool agrees_with(ComplexFloat expected, double sigmas = 4.0) const {
        return deviation_from(expected) <= sigmas;
    }
};

/// Running mean / sum of squared deviations for complex samples
/// (Welford updates, Chan et al. pairwise merge).
class MeanAccumulator {
public:
    void add(ComplexFloat x) noexcept {
        ++count_;
        const ComplexFloat delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        const ComplexFloat delta2 = x - mean_;
        m2_ += delta.real() * delta2.real() + delta.imag() * delta2.imag();
    }

    void merge(const MeanAccumulator& o) noexcept {
        if (o.count_ == 0) {
            return;
        }
        if (count_ == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(count_);
        const double nb = static_cast<double>(o.count_);
        const double total = na + nb;
        const ComplexFloat delta = o.mean_ - mean_;
        mean_ += delta * (nb / total);
        m2_ += o.m2_ + std::norm(delta) * na * nb / total;
        count_ += o.count_;
    }

    std::uint64_t count() const noexcept { return count_; }
    ComplexFloat mean() const noexcept { return mean_; }

    double std_error() const noexcept {
        if (count_ < 2) {
            return 0.0;
        }
        const double n = static_cast<double>(count_);
        return std::sqrt(std::max(m2_, 0.0) / (n - 1.0) / n);
    }

private:
    std::uint64_t count_ = 0;
    ComplexFloat mean_{};
    double m2_ = 0.0;
};

namespace detail {

inline constexpr std::uint64_t chunk_size = 1U << 14;

inline unsigned worker_count(std::uint64_t chunks) {
    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(hw, chunks));
}

/// Runs body(chunk, begin, end) for every chunk of [0, total) and returns
/// once all chunks are done. The first exception in chunk order is rethrown.
template <class Body>
void for_each_chunk(std::uint64_t total, Body&& body) {
    const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;
    if (chunks == 0) {
        return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    auto run_chunk = [&](std::uint64_t c) {
        try {
            const std::uint64_t begin = c * chunk_size;
            body(c, begin, std::min(total, begin + chunk_size));
        } catch (...) {
            errors[c] = std::current_exception();
        }
    };
    const unsigned workers = worker_count(chunks);
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) {
            run_chunk(c);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next++; c < chunks; c = next++) {
                    run_chunk(c);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace detail

/// Mean of integrand(zeta) over `samples` fresh draws from the sampler.
/// The sampler counter advances by `samples`.
template <class Integrand>
MCEstimate mc_mean(SphereSampler& sampler, std::uint64_t samples, Integrand&& integrand) {
    if (samples < 2) {
        throw Error(ErrorKind::usage, "Monte-Carlo estimates need at least 2 samples");
    }
    const std::uint64_t first = sampler.advance(samples);
    const std::uint64_t chunks = (samples + detail::chunk_size - 1) / detail::chunk_size;
    std::vector<MeanAccumulator> partial(chunks);
    detail::for_each_chunk(samples, [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
        MeanAccumulator acc;
        for (std::uint64_t i = begin; i < end; ++i) {
            const SpherePoint zeta = sampler.sample_at(first + i);
            const ComplexFloat v = integrand(zeta);
            if (!is_finite(v)) {
                std::string where;
                for (std::size_t k = 0; k < zeta.dimension(); ++k) {
                    where += (k == 0 ? "(" : ", ") + std::to_string(zeta[k].real()) + "+" +
                             std::to_string(zeta[k].imag()) + "i";
                }
                throw Error(ErrorKind::evaluation, "integrand is not finite at " + where + ")");
            }
            acc.add(v);
        }
        partial[c] = acc;
    });
    MeanAccumulator total;
    for (const auto& p : partial) {
        total.merge(p);
    }
    return {total.mean(), total.std_error(), samples, sampler.seed()};
}

/// Black-box boundary function g : S -> C.
using SphereFunction = std::function<ComplexFloat(const SpherePoint&)>;

} // namespace hardy
