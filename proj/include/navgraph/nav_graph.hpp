#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "navgraph/errors.hpp"
#include "navgraph/metric.hpp"

namespace navgraph {

enum class GraphKind { Perm, Wspd, Diskann };

/// A directed graph whose vertices are ranks in some ordering of the point
/// set.  For permutation graphs the ordering is the greedy permutation; for
/// the other constructions it is the identity.  Out lists are sorted
/// ascending by destination rank, with no self loops and no parallel edges.
struct NavGraph {
    GraphKind kind = GraphKind::Perm;
    std::size_t n = 0;
    std::vector<std::vector<std::uint32_t>> out; // by source rank
    std::vector<std::uint32_t> order;            // rank -> point index
    std::vector<std::uint32_t> rank_of;          // point index -> rank
    std::vector<double> radii;                   // insertion radii (perm graphs only)
    double eps_query = 0.0;                      // the accuracy target the graph was built for
    double eps_build = 0.0;                      // perm: routing eps, wspd: separation, diskann: alpha

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (const auto& o : out) total += o.size();
        return total;
    }

    std::size_t max_out_degree() const {
        std::size_t m = 0;
        for (const auto& o : out)
            if (o.size() > m) m = o.size();
        return m;
    }
};

/// Outcome of one routed query.
struct RoutingResult {
    std::uint32_t answer = 0;     // point index of the final vertex
    double dist = 0.0;            // distance from the query to that point
    std::size_t hops = 0;         // vertex changes along the walk
    std::size_t edges_scanned = 0;
    std::uint64_t distance_evals = 0;
    bool early_stopped = false;
    std::vector<std::uint32_t> trace; // visited ranks, start vertex first
};

/// Mature greedy walk usable on any navigation graph: evaluate every
/// out-neighbor of the current vertex, move to the closest one if strictly
/// closer than the current vertex, stop otherwise.
inline RoutingResult mature_greedy_route(const NavGraph& g, const PointSet& ps,
                                         std::span<const double> q, std::uint32_t start = 0) {
    if (g.n != ps.size()) throw UsageError("graph and point set sizes differ");
    if (start >= g.n) throw UsageError("start vertex out of range");

    DistCounter counter;
    RoutingResult res;
    std::uint32_t cur = start;
    double dcur = ps.dist_to(g.order[cur], q, &counter);
    res.trace.push_back(cur);

    for (;;) {
        std::uint32_t best = cur;
        double dbest = dcur;
        for (std::uint32_t nb : g.out[cur]) {
            ++res.edges_scanned;
            const double d = ps.dist_to(g.order[nb], q, &counter);
            if (d < dbest) {
                best = nb;
                dbest = d;
            }
        }
        if (best == cur) break;
        cur = best;
        dcur = dbest;
        res.trace.push_back(cur);
        ++res.hops;
    }

    res.answer = g.order[cur];
    res.dist = dcur;
    res.distance_evals = counter.evals;
    return res;
}

} // namespace navgraph
