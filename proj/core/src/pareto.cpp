#include "folio/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "folio/errors.hpp"

namespace folio {

bool dominates(const ObjectivePoint& p, const ObjectivePoint& q) {
    const bool no_worse = p.ret >= q.ret && p.var <= q.var;
    const bool better = p.ret > q.ret || p.var < q.var;
    return no_worse && better;
}

std::vector<std::vector<int>> fast_non_dominated_sort(const std::vector<ObjectivePoint>& points) {
    const int n = static_cast<int>(points.size());
    for (const auto& p : points) {
        if (!std::isfinite(p.ret) || !std::isfinite(p.var)) {
            throw ContractError("non-finite objective value in non-dominated sort");
        }
    }
    std::vector<std::vector<int>> dominated(static_cast<std::size_t>(n));
    std::vector<int> dom_count(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> fronts;

    std::vector<int> current;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(points[p], points[q])) {
                dominated[p].push_back(q);
            } else if (dominates(points[q], points[p])) {
                ++dom_count[p];
            }
        }
        if (dom_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<int> next;
        for (int p : current) {
            for (int q : dominated[p]) {
                if (--dom_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<ObjectivePoint>& points,
                                      const std::vector<int>& front) {
    if (front.empty()) throw ContractError("crowding_distance: empty front");
    const std::size_t m = front.size();
    std::vector<double> dist(m, 0.0);
    if (m <= 2) {
        for (auto& d : dist) d = std::numeric_limits<double>::infinity();
        return dist;
    }

    std::vector<std::size_t> order(m);
    const auto accumulate_objective = [&](auto key) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return key(points[front[a]]) < key(points[front[b]]);
        });
        const double lo = key(points[front[order.front()]]);
        const double hi = key(points[front[order.back()]]);
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        if (hi == lo) return;
        for (std::size_t k = 1; k + 1 < m; ++k) {
            const double gap =
                key(points[front[order[k + 1]]]) - key(points[front[order[k - 1]]]);
            dist[order[k]] += gap / (hi - lo);
        }
    };
    accumulate_objective([](const ObjectivePoint& p) { return p.ret; });
    accumulate_objective([](const ObjectivePoint& p) { return p.var; });
    return dist;
}

} // namespace folio
