#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "navgraph/errors.hpp"
#include "navgraph/metric.hpp"
#include "navgraph/nav_graph.hpp"
#include "navgraph/wspd.hpp"

namespace navgraph {

/// Expands a pair decomposition into a navigation graph: for each pair, the
/// representative of either side connects to every point of the other side,
/// and every point connects to the opposite representative.  Both
/// orientations are emitted; duplicates collapse.
inline NavGraph make_wspd_nav_graph(const PointSet& ps, const WspdPairSet& w,
                                    double eps_query) {
    const std::size_t n = ps.size();
    NavGraph g;
    g.kind = GraphKind::Wspd;
    g.n = n;
    g.out.assign(n, {});
    for (std::size_t i = 0; i < w.size(); ++i) {
        const WspdPair p = w.pair(i);
        for (std::uint32_t y : p.b_set) {
            g.out[p.rep_a].push_back(y);
            g.out[y].push_back(p.rep_a);
        }
        for (std::uint32_t x : p.a_set) {
            g.out[x].push_back(p.rep_b);
            g.out[p.rep_b].push_back(x);
        }
    }
    for (auto& row : g.out) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    g.order.resize(n);
    g.rank_of.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) g.order[i] = g.rank_of[i] = i;
    g.eps_query = eps_query;
    g.eps_build = w.separation();
    return g;
}

/// Builds the WSPD navigation graph for a query accuracy target in (0,1),
/// using separation eps_query / 8.
inline NavGraph build_wspd_graph(const PointSet& ps, double eps_query) {
    if (!(eps_query > 0.0 && eps_query < 1.0))
        throw UsageError("eps_query must lie in (0,1), got " + std::to_string(eps_query));
    const WspdPairSet w = build_wspd(ps, eps_query / 8.0);
    return make_wspd_nav_graph(ps, w, eps_query);
}

/// Mature greedy walk: at each vertex evaluate every out-neighbor, move to
/// the closest one if strictly closer than the current vertex, stop
/// otherwise.  Distances to the query strictly decrease along the trace.
inline RoutingResult wspd_greedy_route(const NavGraph& g, const PointSet& ps,
                                       std::span<const double> q, double eps,
                                       std::uint32_t start = 0) {
    if (g.kind != GraphKind::Wspd)
        throw UsageError("wspd_greedy_route expects a wspd graph");
    if (eps != g.eps_query)
        throw UsageError("eps does not match the value the graph was built for");
    return mature_greedy_route(g, ps, q, start);
}

/// Coarse-then-fine scheme: a walk on the eps = 1/2 graph finds a rough
/// answer, which seeds a second walk on the target graph.  Counters sum.
inline RoutingResult two_phase_route(const NavGraph& g_half, const NavGraph& g_eps,
                                     const PointSet& ps, std::span<const double> q,
                                     double eps) {
    if (g_half.eps_query != 0.5)
        throw UsageError("two_phase_route expects the first graph built with eps 1/2");
    const RoutingResult first = wspd_greedy_route(g_half, ps, q, 0.5, 0);
    RoutingResult second = wspd_greedy_route(g_eps, ps, q, eps, first.answer);

    RoutingResult combined = second;
    combined.hops = first.hops + second.hops;
    combined.edges_scanned = first.edges_scanned + second.edges_scanned;
    combined.distance_evals = first.distance_evals + second.distance_evals;
    combined.trace = first.trace;
    combined.trace.insert(combined.trace.end(), second.trace.begin() + 1, second.trace.end());
    return combined;
}

} // namespace navgraph
