#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace zerolab {

/// Worker count: SGP_ZEROLAB_WORKERS if set, else `requested`, else hardware concurrency.
inline unsigned resolve_workers(unsigned requested = 0)
{
    if (const char* env = std::getenv("SGP_ZEROLAB_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates fn(i) for i in [0, n) on `workers` threads. Results are stored by
/// index, so the output never depends on scheduling.
template <class Fn>
auto parallel_map(std::size_t n, unsigned workers, Fn&& fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>>
{
    using R = std::invoke_result_t<Fn&, std::size_t>;
    std::vector<R> out(n);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

/// Sum with a fixed binary-tree order.
inline double pairwise_sum(std::span<const double> v)
{
    if (v.empty()) return 0.0;
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// log(sum(exp(v))) with the same fixed tree order; -inf for an empty or all -inf input.
inline double pairwise_log_sum_exp(std::span<const double> v)
{
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    if (v.empty()) return ninf;
    const double m = *std::max_element(v.begin(), v.end());
    if (m == ninf) return ninf;
    std::vector<double> shifted(v.size());
    std::transform(v.begin(), v.end(), shifted.begin(), [m](double x) { return std::exp(x - m); });
    return m + std::log(pairwise_sum(shifted));
}

} // namespace zerolab
