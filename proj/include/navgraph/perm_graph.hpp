#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "navgraph/errors.hpp"
#include "navgraph/greedy_permutation.hpp"
#include "navgraph/metric.hpp"
#include "navgraph/nav_graph.hpp"

namespace navgraph {

/// Routing eps derived from the query accuracy target.  The same value feeds
/// the friend list radius, the move threshold and the early stop rule, which
/// keeps the end to end approximation ratio within 1 + eps_query.
inline double routing_eps(double eps_query) {
    return std::min(eps_query, 0.5) / 4.0;
}

/// Assembles the navigation graph of a permutation with friend lists:
/// one directed edge j -> k per friend entry j in friends[k].  All edges
/// point forward in rank.
inline NavGraph make_perm_nav_graph(const GreedyPermutation& gp, double eps_query) {
    if (!gp.has_friends()) throw UsageError("permutation has no friend lists attached");
    const std::size_t n = gp.order.size();
    NavGraph g;
    g.kind = GraphKind::Perm;
    g.n = n;
    g.out.assign(n, {});
    for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t j : gp.friends[k]) g.out[j].push_back(k);
    g.order = gp.order;
    g.rank_of.assign(n, 0);
    for (std::uint32_t r = 0; r < n; ++r) g.rank_of[gp.order[r]] = r;
    g.radii = gp.radii;
    g.eps_query = eps_query;
    g.eps_build = gp.eps_build;
    return g;
}

struct PermIndex {
    NavGraph graph;
    GreedyPermutation perm;
};

/// Builds the permutation based navigation graph for a query accuracy
/// target eps_query in (0,1).
inline PermIndex build_perm_graph(const PointSet& ps, double eps_query,
                                  std::uint32_t start = 0) {
    if (!(eps_query > 0.0 && eps_query < 1.0))
        throw UsageError("eps_query must lie in (0,1), got " + std::to_string(eps_query));
    const double eps_r = routing_eps(eps_query);
    GreedyPermutation gp = attach_friend_lists(build_greedy_permutation(ps, start), ps, eps_r);
    NavGraph g = make_perm_nav_graph(gp, eps_query);
    return {std::move(g), std::move(gp)};
}

struct RoutingOptions {
    std::uint32_t start_rank = 0;
    /// When set, every scanned edge (source rank, destination rank) is
    /// appended, in scan order.
    std::vector<std::pair<std::uint32_t, std::uint32_t>>* scan_log = nullptr;
};

/// Greedy walk on a permutation graph.  At each vertex the out edges are
/// scanned in ascending destination rank and the walk restarts at the first
/// destination whose distance drops below (1 - eps_r/4) times the current
/// one.  With early_stop, a scan that reaches a farther destination whose
/// insertion radius is below (eps_r/8) times the current distance terminates
/// the walk at the current vertex.
inline RoutingResult greedy_route(const NavGraph& g, const PointSet& ps,
                                  std::span<const double> q, double eps_query,
                                  bool early_stop = false, const RoutingOptions& opts = {}) {
    if (g.kind != GraphKind::Perm) throw UsageError("greedy_route expects a permutation graph");
    if (g.n != ps.size()) throw UsageError("graph and point set sizes differ");
    if (eps_query != g.eps_query)
        throw UsageError("eps_query does not match the value the graph was built for");
    if (opts.start_rank >= g.n) throw UsageError("start rank out of range");

    const double move_factor = 1.0 - g.eps_build / 4.0;
    const double stop_factor = g.eps_build / 8.0;
    const std::size_t n = g.n;

    DistCounter counter;
    RoutingResult res;
    std::uint32_t cur = opts.start_rank;
    double dcur = ps.dist_to(g.order[cur], q, &counter);
    res.trace.push_back(cur);

    bool moved = true;
    while (moved) {
        moved = false;
        for (std::uint32_t dest : g.out[cur]) {
            ++res.edges_scanned;
            if (opts.scan_log) opts.scan_log->emplace_back(cur, dest);
            const double ddest = ps.dist_to(g.order[dest], q, &counter);
            if (ddest <= move_factor * dcur) {
                cur = dest;
                dcur = ddest;
                res.trace.push_back(cur);
                ++res.hops;
                moved = true;
                break;
            }
            if (early_stop && ddest > dcur) {
                // Insertion radius of the destination rank; the full set has
                // cover radius zero beyond the last rank.
                const double r_dest = dest < n - 1 ? g.radii[dest] : 0.0;
                if (r_dest < stop_factor * dcur) {
                    res.early_stopped = true;
                    moved = false;
                    break;
                }
            }
        }
    }

    res.answer = g.order[cur];
    res.dist = dcur;
    res.distance_evals = counter.evals;
    return res;
}

} // namespace navgraph
