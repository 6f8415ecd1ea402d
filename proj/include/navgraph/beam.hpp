#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "navgraph/errors.hpp"
#include "navgraph/metric.hpp"
#include "navgraph/nav_graph.hpp"

namespace navgraph {

struct BeamResult {
    std::vector<std::uint32_t> ranked; // k closest visited, by distance then index
    RoutingResult route;               // counters; answer = ranked front
};

/// Dijkstra-like beam exploration.  Repeatedly expands the queued vertex
/// closest to the query, enqueues its unseen out-neighbors, and truncates the
/// queue to the beam width.  Vertices are never revisited; entries dropped at
/// truncation may be rediscovered later.
inline BeamResult beam_search(const NavGraph& g, const PointSet& ps, std::span<const double> q,
                              std::size_t beam, std::size_t k, std::uint32_t start = 0) {
    if (k < 1 || beam < k) throw UsageError("beam_search requires beam >= k >= 1");
    if (start >= g.n) throw UsageError("beam_search start vertex out of range");
    if (g.n != ps.size()) throw UsageError("graph and point set sizes differ");

    enum : char { kUntouched = 0, kQueued = 1, kVisited = 2 };
    std::vector<char> state(g.n, kUntouched);

    struct Entry {
        double dist;
        std::uint32_t rank;
        bool operator<(const Entry& o) const {
            return dist != o.dist ? dist < o.dist : rank < o.rank;
        }
    };
    std::vector<Entry> queue;   // kept sorted ascending
    std::vector<Entry> visited; // expansion order

    DistCounter counter;
    BeamResult out;
    queue.push_back({ps.dist_to(g.order[start], q, &counter), start});
    state[start] = kQueued;

    while (!queue.empty()) {
        const Entry cur = queue.front();
        queue.erase(queue.begin());
        state[cur.rank] = kVisited;
        visited.push_back(cur);
        out.route.trace.push_back(cur.rank);

        for (std::uint32_t nb : g.out[cur.rank]) {
            ++out.route.edges_scanned;
            if (state[nb] != kUntouched) continue;
            const Entry e{ps.dist_to(g.order[nb], q, &counter), nb};
            queue.insert(std::upper_bound(queue.begin(), queue.end(), e), e);
            state[nb] = kQueued;
        }
        while (queue.size() > beam) {
            state[queue.back().rank] = kUntouched;
            queue.pop_back();
        }
    }

    std::sort(visited.begin(), visited.end());
    const std::size_t take = std::min(k, visited.size());
    out.ranked.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.ranked.push_back(g.order[visited[i].rank]);

    out.route.answer = out.ranked.front();
    out.route.dist = visited.front().dist;
    out.route.hops = out.route.trace.size() - 1;
    out.route.distance_evals = counter.evals;
    return out;
}

} // namespace navgraph
