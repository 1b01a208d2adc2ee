#pragma once

#include "padist/distribution.hpp"
#include "padist/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace padist {

/// Shared knobs for every exhaustive ball scan.
struct ScanOptions {
    std::uint64_t ball_budget = 1'000'000;  ///< refuse levels with more balls than this
    unsigned threads = 1;
};

/// p^depth as a ball count; throws BudgetError when it exceeds the budget.
std::uint64_t level_size(long p, unsigned depth, const ScanOptions& opts);

/// out[i] = fn(i) for i in [0, count), split into contiguous ranges across
/// opts.threads workers. Output order never depends on the schedule.
template <class T, class Fn>
std::vector<T> parallel_map(std::uint64_t count, unsigned threads, Fn&& fn) {
    std::vector<T> out(count);
    const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, count));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t lo = count * w / workers, hi = count * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] {
                try {
                    for (std::uint64_t i = lo; i < hi; ++i) out[i] = fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

/// Values of e on every depth-n ball, indexed by rep.
std::vector<Rational> evaluate_level(const Dist& e, unsigned depth, const ScanOptions& opts = {});

}  // namespace padist
