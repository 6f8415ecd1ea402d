#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "navgraph/errors.hpp"
#include "navgraph/metric.hpp"

namespace navgraph {

/// A greedy (farthest point) permutation of a point set.
///
/// order[k] is the point index chosen at step k.  radii[k] is the distance
/// from order[k+1] to the prefix {order[0..k]}, so radii has n-1 entries and
/// is non increasing.  Every prefix of the order is a 2-approximate k-center
/// solution, and the prefix of size m covers the set at radius radii[m-1].
///
/// friends[k], when attached, lists the ranks j < k whose points lie within
/// 8 * radii[k-1] / eps of order[k], sorted ascending.  friends[0] is empty.
struct GreedyPermutation {
    std::vector<std::uint32_t> order;
    std::vector<double> radii;
    std::vector<std::vector<std::uint32_t>> friends;
    double eps_build = 0.0;

    bool has_friends() const { return eps_build > 0.0; }

    std::size_t friend_edge_count() const {
        std::size_t total = 0;
        for (const auto& f : friends) total += f.size();
        return total;
    }
};

/// Exact farthest point traversal, O(n^2) time, O(n) extra space.
/// Ties on the farthest distance resolve to the lowest point index.
inline GreedyPermutation build_greedy_permutation(const PointSet& ps, std::uint32_t start = 0) {
    const std::size_t n = ps.size();
    if (start >= n) throw UsageError("start index " + std::to_string(start) + " out of range");

    GreedyPermutation gp;
    gp.order.reserve(n);
    gp.radii.reserve(n > 0 ? n - 1 : 0);

    std::vector<double> dist_to_prefix(n, std::numeric_limits<double>::infinity());
    std::vector<char> taken(n, 0);

    std::uint32_t current = start;
    gp.order.push_back(current);
    taken[current] = 1;

    for (std::size_t step = 1; step < n; ++step) {
        double farthest = -1.0;
        std::uint32_t pick = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (taken[i]) continue;
            const double d = ps.dist(i, current);
            if (d < dist_to_prefix[i]) dist_to_prefix[i] = d;
            if (dist_to_prefix[i] > farthest) {
                farthest = dist_to_prefix[i];
                pick = i;
            }
        }
        gp.order.push_back(pick);
        gp.radii.push_back(farthest);
        taken[pick] = 1;
        current = pick;
    }
    gp.friends.assign(n, {});
    return gp;
}

/// Attaches friend lists: rank k keeps every earlier rank within
/// 8 * radii[k-1] / eps of its point.  Returns the augmented permutation.
inline GreedyPermutation attach_friend_lists(GreedyPermutation gp, const PointSet& ps,
                                             double eps) {
    if (!(eps > 0.0)) throw UsageError("friend list eps must be positive");
    const std::size_t n = gp.order.size();
    if (n != ps.size()) throw UsageError("permutation does not match point set size");

    gp.friends.assign(n, {});
    for (std::size_t k = 1; k < n; ++k) {
        const double radius = 8.0 * gp.radii[k - 1] / eps;
        auto& fl = gp.friends[k];
        for (std::uint32_t j = 0; j < k; ++j) {
            if (ps.dist(gp.order[j], gp.order[k]) <= radius) fl.push_back(j);
        }
    }
    gp.eps_build = eps;
    return gp;
}

} // namespace navgraph
