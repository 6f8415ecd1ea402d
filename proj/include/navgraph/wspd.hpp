#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "navgraph/errors.hpp"
#include "navgraph/metric.hpp"

namespace navgraph {

/// One well-separated pair: two disjoint index subsets and a representative
/// on each side.  The spans alias storage owned by the WspdPairSet.
struct WspdPair {
    std::span<const std::uint32_t> a_set;
    std::span<const std::uint32_t> b_set;
    std::uint32_t rep_a = 0;
    std::uint32_t rep_b = 0;
};

/// A well-separated pair decomposition built over a compressed quadtree.
/// Pairs are stored as quadtree node handles; point subsets are contiguous
/// ranges of an internal permutation, so a pair view costs nothing to make.
class WspdPairSet {
  public:
    struct Node {
        std::vector<double> cell_lo; // cube corner
        double cell_side = 0.0;
        std::vector<double> box_lo; // tight bounding box of the subtree points
        std::vector<double> box_hi;
        std::uint32_t begin = 0; // range in the point permutation
        std::uint32_t end = 0;
        std::uint32_t rep = 0; // lowest point index in the subtree
        std::vector<std::uint32_t> children;

        bool leaf() const { return children.empty(); }
        std::uint32_t count() const { return end - begin; }
    };

    double separation() const { return sep_; }
    std::size_t size() const { return pairs_.size(); }

    WspdPair pair(std::size_t i) const {
        const auto [na, nb] = pairs_[i];
        const Node& a = nodes_[na];
        const Node& b = nodes_[nb];
        return {{perm_.data() + a.begin, a.count()},
                {perm_.data() + b.begin, b.count()},
                a.rep,
                b.rep};
    }

    /// Upper bound on the diameter of a pair side (bounding box extent norm).
    double side_diameter_bound(std::size_t i, bool b_side) const {
        return diam_bound(nodes_[b_side ? pairs_[i].second : pairs_[i].first]);
    }

    /// Debug dump, one line per pair:  A:{...} B:{...} repA repB sep_ratio
    /// where sep_ratio is the achieved max(diam)/dist, computed exactly.
    void dump(std::ostream& out, const PointSet& ps) const;

    friend WspdPairSet build_wspd(const PointSet& ps, double sep);

  private:
    double diam_bound(const Node& v) const {
        double s = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            const double e = v.box_hi[k] - v.box_lo[k];
            s = metric_ == MetricKind::L2 ? s + e * e : std::max(s, e);
        }
        return metric_ == MetricKind::L2 ? std::sqrt(s) : s;
    }

    double dist_bound(const Node& a, const Node& b) const {
        double s = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) {
            const double gap =
                std::max({0.0, b.box_lo[k] - a.box_hi[k], a.box_lo[k] - b.box_hi[k]});
            s = metric_ == MetricKind::L2 ? s + gap * gap : std::max(s, gap);
        }
        return metric_ == MetricKind::L2 ? std::sqrt(s) : s;
    }

    bool well_separated(std::uint32_t na, std::uint32_t nb) const {
        const Node& a = nodes_[na];
        const Node& b = nodes_[nb];
        const double diam = std::max(diam_bound(a), diam_bound(b));
        return diam <= sep_ * dist_bound(a, b);
    }

    std::uint32_t build_node(std::vector<double> cell_lo, double side, std::uint32_t begin,
                             std::uint32_t end, std::vector<std::uint32_t>& scratch,
                             const PointSet& ps);

    std::vector<Node> nodes_;
    std::vector<std::uint32_t> perm_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;
    double sep_ = 0.0;
    std::size_t dim_ = 0;
    MetricKind metric_ = MetricKind::L2;
};

inline std::uint32_t WspdPairSet::build_node(std::vector<double> cell_lo, double side,
                                             std::uint32_t begin, std::uint32_t end,
                                             std::vector<std::uint32_t>& scratch,
                                             const PointSet& ps) {
    if (end - begin == 1) {
        Node leaf;
        leaf.cell_lo = std::move(cell_lo);
        leaf.cell_side = side;
        const auto p = ps.point(perm_[begin]);
        leaf.box_lo.assign(p.begin(), p.end());
        leaf.box_hi.assign(p.begin(), p.end());
        leaf.begin = begin;
        leaf.end = end;
        leaf.rep = perm_[begin];
        nodes_.push_back(std::move(leaf));
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    const std::uint32_t fan = 1u << dim_;
    std::vector<std::uint32_t> bucket_count(fan);
    auto child_of = [&](std::uint32_t pt) {
        std::uint32_t c = 0;
        const auto p = ps.point(pt);
        for (std::size_t k = 0; k < dim_; ++k)
            if (p[k] > cell_lo[k] + side / 2.0) c |= 1u << k;
        return c;
    };

    for (int depth = 0;; ++depth) {
        if (depth > 4096)
            throw DataError("quadtree did not separate the points; coordinates too close");
        std::fill(bucket_count.begin(), bucket_count.end(), 0);
        for (std::uint32_t i = begin; i < end; ++i) ++bucket_count[child_of(perm_[i])];

        std::uint32_t nonempty = 0, only = 0;
        for (std::uint32_t c = 0; c < fan; ++c)
            if (bucket_count[c]) {
                ++nonempty;
                only = c;
            }
        if (nonempty == 1) {
            // Compression: every point in one octant, descend without a node.
            for (std::size_t k = 0; k < dim_; ++k)
                if (only & (1u << k)) cell_lo[k] += side / 2.0;
            side /= 2.0;
            continue;
        }

        // Counting sort the range by octant so each subtree stays contiguous.
        std::vector<std::uint32_t> offset(fan + 1, 0);
        for (std::uint32_t c = 0; c < fan; ++c) offset[c + 1] = offset[c] + bucket_count[c];
        scratch.resize(end - begin);
        {
            std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
            for (std::uint32_t i = begin; i < end; ++i)
                scratch[cursor[child_of(perm_[i])]++] = perm_[i];
        }
        std::copy(scratch.begin(), scratch.end(), perm_.begin() + begin);

        std::vector<std::uint32_t> kids;
        for (std::uint32_t c = 0; c < fan; ++c) {
            if (!bucket_count[c]) continue;
            std::vector<double> child_lo = cell_lo;
            for (std::size_t k = 0; k < dim_; ++k)
                if (c & (1u << k)) child_lo[k] += side / 2.0;
            kids.push_back(build_node(std::move(child_lo), side / 2.0, begin + offset[c],
                                      begin + offset[c + 1], scratch, ps));
        }

        Node v;
        v.cell_lo = std::move(cell_lo);
        v.cell_side = side;
        v.begin = begin;
        v.end = end;
        v.rep = UINT32_MAX;
        v.box_lo.assign(dim_, 0.0);
        v.box_hi.assign(dim_, 0.0);
        bool first = true;
        for (std::uint32_t kid : kids) {
            const Node& c = nodes_[kid];
            v.rep = std::min(v.rep, c.rep);
            for (std::size_t k = 0; k < dim_; ++k) {
                v.box_lo[k] = first ? c.box_lo[k] : std::min(v.box_lo[k], c.box_lo[k]);
                v.box_hi[k] = first ? c.box_hi[k] : std::max(v.box_hi[k], c.box_hi[k]);
            }
            first = false;
        }
        v.children = std::move(kids);
        nodes_.push_back(std::move(v));
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }
}

/// Callahan-Kosaraju style decomposition: for every internal node, refine
/// each unordered pair of its children until well separated, always splitting
/// the side with the larger diameter bound.
inline WspdPairSet build_wspd(const PointSet& ps, double sep) {
    if (!(sep > 0.0 && sep <= 1.0)) throw UsageError("separation must lie in (0,1]");
    if (ps.metric() == MetricKind::L1)
        throw UsageError("wspd construction supports l2 and linf metrics only");
    if (ps.size() < 2) throw UsageError("wspd needs at least two points");
    if (ps.dim() > 16) throw UsageError("wspd quadtree supports dimension up to 16");

    WspdPairSet w;
    w.sep_ = sep;
    w.dim_ = ps.dim();
    w.metric_ = ps.metric();
    w.perm_.resize(ps.size());
    for (std::uint32_t i = 0; i < ps.size(); ++i) w.perm_[i] = i;

    // Root cell: bounding cube, side inflated by 1%, centered on the box.
    std::vector<double> lo(w.dim_), hi(w.dim_);
    for (std::size_t k = 0; k < w.dim_; ++k) {
        lo[k] = hi[k] = ps.point(0)[k];
    }
    for (std::uint32_t i = 1; i < ps.size(); ++i) {
        const auto p = ps.point(i);
        for (std::size_t k = 0; k < w.dim_; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    double extent = 0.0;
    for (std::size_t k = 0; k < w.dim_; ++k) extent = std::max(extent, hi[k] - lo[k]);
    const double side = extent * 1.01;
    std::vector<double> root_lo(w.dim_);
    for (std::size_t k = 0; k < w.dim_; ++k)
        root_lo[k] = (lo[k] + hi[k]) / 2.0 - side / 2.0;

    std::vector<std::uint32_t> scratch;
    const std::uint32_t root =
        w.build_node(std::move(root_lo), side, 0, static_cast<std::uint32_t>(ps.size()),
                     scratch, ps);
    (void)root;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
    for (std::uint32_t v = 0; v < w.nodes_.size(); ++v) {
        const auto& kids = w.nodes_[v].children;
        for (std::size_t i = 0; i < kids.size(); ++i)
            for (std::size_t j = i + 1; j < kids.size(); ++j) stack.emplace_back(kids[i], kids[j]);
    }
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (w.well_separated(a, b)) {
            w.pairs_.emplace_back(a, b);
            continue;
        }
        if (w.diam_bound(w.nodes_[a]) < w.diam_bound(w.nodes_[b])) std::swap(a, b);
        for (std::uint32_t c : w.nodes_[a].children) stack.emplace_back(c, b);
    }
    return w;
}

inline void WspdPairSet::dump(std::ostream& out, const PointSet& ps) const {
    auto write_side = [&](std::span<const std::uint32_t> side) {
        out << '{';
        for (std::size_t i = 0; i < side.size(); ++i) {
            if (i) out << ',';
            out << side[i];
        }
        out << '}';
    };
    auto exact_diam = [&](std::span<const std::uint32_t> side) {
        double d = 0.0;
        for (std::size_t i = 0; i < side.size(); ++i)
            for (std::size_t j = i + 1; j < side.size(); ++j)
                d = std::max(d, ps.dist(side[i], side[j]));
        return d;
    };
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        const WspdPair p = pair(i);
        double dist = std::numeric_limits<double>::infinity();
        for (std::uint32_t x : p.a_set)
            for (std::uint32_t y : p.b_set) dist = std::min(dist, ps.dist(x, y));
        const double ratio = std::max(exact_diam(p.a_set), exact_diam(p.b_set)) / dist;
        out << "A:";
        write_side(p.a_set);
        out << " B:";
        write_side(p.b_set);
        out << ' ' << p.rep_a << ' ' << p.rep_b << ' ' << ratio << '\n';
    }
}

} // namespace navgraph
