#include "padist/enumerate.hpp"

#include "padist/errors.hpp"

namespace padist {

std::uint64_t level_size(long p, unsigned depth, const ScanOptions& opts) {
    const Integer n = ipow(p, depth);
    if (n > Integer(static_cast<unsigned long>(opts.ball_budget)))
        throw BudgetError("ball budget exceeded: " + std::to_string(p) + "^" + std::to_string(depth) + " = " +
                          to_string(n) + " > " + std::to_string(opts.ball_budget));
    return n.get_ui();
}

std::vector<Rational> evaluate_level(const Dist& e, unsigned depth, const ScanOptions& opts) {
    const long p = e.prime();
    const std::uint64_t count = level_size(p, depth, opts);
    return parallel_map<Rational>(count, opts.threads, [&](std::uint64_t rep) {
        return evaluate(e, Ball(p, depth, Integer(static_cast<unsigned long>(rep))));
    });
}

}  // namespace padist
