#include "sad/metrics.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace sad::detail {

// Successive shortest paths with potentials on the dense bipartite
// transportation graph. Supplies/demands are reals; every augmentation
// saturates a source, a sink, or drains a residual arc, so the path count
// stays small at the grid sizes EMD uses.
double transport_cost(const std::vector<double>& supply, const std::vector<double>& demand,
                      const std::vector<double>& cost) {
    const int ns = int(supply.size()), nd = int(demand.size());
    if (cost.size() != std::size_t(ns) * nd)
        throw std::invalid_argument("transport_cost: cost matrix size mismatch");
    if (ns == 0 || nd == 0) throw std::invalid_argument("transport_cost: empty distribution");

    constexpr double kTol = 1e-12;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> remaining_supply = supply;
    std::vector<double> remaining_demand = demand;
    std::vector<double> flow(std::size_t(ns) * nd, 0.0);
    std::vector<double> pot(std::size_t(ns) + nd, 0.0); // node potentials

    double total_remaining = 0;
    for (double s : remaining_supply) {
        if (s < 0) throw std::invalid_argument("transport_cost: negative supply");
        total_remaining += s;
    }

    const int n = ns + nd;
    std::vector<double> dist(static_cast<std::size_t>(n));
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::vector<bool> done(static_cast<std::size_t>(n));

    // generous cap; hit only if floating-point progress stalls
    long guard = 64L * (ns + nd) + 256;

    while (total_remaining > kTol) {
        if (--guard < 0)
            throw std::runtime_error("transport_cost: no progress (degenerate instance)");

        // multi-source Dijkstra over reduced costs
        for (int v = 0; v < n; ++v) {
            dist[std::size_t(v)] = inf;
            parent[std::size_t(v)] = -1;
            done[std::size_t(v)] = false;
        }
        for (int s = 0; s < ns; ++s)
            if (remaining_supply[std::size_t(s)] > kTol) dist[std::size_t(s)] = 0.0;

        int target = -1;
        while (true) {
            int u = -1;
            double best = inf;
            for (int v = 0; v < n; ++v)
                if (!done[std::size_t(v)] && dist[std::size_t(v)] < best) {
                    best = dist[std::size_t(v)];
                    u = v;
                }
            if (u < 0) break;
            done[std::size_t(u)] = true;
            if (u >= ns && remaining_demand[std::size_t(u - ns)] > kTol) {
                target = u;
                break;
            }
            if (u < ns) {
                for (int t = 0; t < nd; ++t) {
                    double rc = cost[std::size_t(u) * nd + t] + pot[std::size_t(u)] -
                                pot[std::size_t(ns + t)];
                    if (rc < 0) rc = 0; // floating noise only
                    if (dist[std::size_t(u)] + rc < dist[std::size_t(ns + t)]) {
                        dist[std::size_t(ns + t)] = dist[std::size_t(u)] + rc;
                        parent[std::size_t(ns + t)] = u;
                    }
                }
            } else {
                int t = u - ns;
                for (int s = 0; s < ns; ++s) {
                    if (flow[std::size_t(s) * nd + t] <= 0) continue;
                    double rc = -cost[std::size_t(s) * nd + t] + pot[std::size_t(u)] -
                                pot[std::size_t(s)];
                    if (rc < 0) rc = 0;
                    if (dist[std::size_t(u)] + rc < dist[std::size_t(s)]) {
                        dist[std::size_t(s)] = dist[std::size_t(u)] + rc;
                        parent[std::size_t(s)] = u;
                    }
                }
            }
        }
        if (target < 0)
            throw std::runtime_error("transport_cost: supply/demand totals differ");

        // bottleneck: residual arcs cap at their current flow, the path head
        // at its remaining supply, the target at its remaining demand
        double push = remaining_demand[std::size_t(target - ns)];
        int head = target;
        for (int v = target; parent[std::size_t(v)] >= 0; v = parent[std::size_t(v)]) {
            int u = parent[std::size_t(v)];
            if (u >= ns) { // residual arc undoes flow (v -> u), v is a source
                double f = flow[std::size_t(v) * nd + (u - ns)];
                if (f < push) push = f;
            }
            head = u;
        }
        if (remaining_supply[std::size_t(head)] < push)
            push = remaining_supply[std::size_t(head)];
        if (push <= 0)
            throw std::runtime_error("transport_cost: zero augmentation");

        // apply
        for (int v = target; parent[std::size_t(v)] >= 0; v = parent[std::size_t(v)]) {
            int u = parent[std::size_t(v)];
            if (u < ns)
                flow[std::size_t(u) * nd + (v - ns)] += push;
            else
                flow[std::size_t(v) * nd + (u - ns)] -= push;
        }
        remaining_supply[std::size_t(head)] -= push;
        remaining_demand[std::size_t(target - ns)] -= push;
        total_remaining -= push;

        // potential update keeps reduced costs nonnegative
        double dt = dist[std::size_t(target)];
        for (int v = 0; v < n; ++v)
            pot[std::size_t(v)] += dist[std::size_t(v)] < dt ? dist[std::size_t(v)] : dt;
    }

    double total = 0;
    for (int s = 0; s < ns; ++s)
        for (int t = 0; t < nd; ++t)
            total += flow[std::size_t(s) * nd + t] * cost[std::size_t(s) * nd + t];
    return total;
}

} // namespace sad::detail
