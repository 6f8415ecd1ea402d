#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "navgraph/errors.hpp"
#include "navgraph/metric.hpp"
#include "navgraph/nav_graph.hpp"

namespace navgraph {

/// The Euclidean locus of points p with d(u1,p) >= kappa * d(u2,p): a ball
/// around a center on the far side of u2 from u1.
struct ApolloniusBall {
    std::vector<double> center;
    double radius = 0.0;
    double kappa = 0.0;
};

inline ApolloniusBall apollonius_ball(std::span<const double> u1, std::span<const double> u2,
                                      double kappa) {
    if (u1.size() != u2.size()) throw UsageError("apollonius_ball: dimension mismatch");
    if (!(kappa > 1.0)) throw UsageError("apollonius_ball: kappa must exceed 1");
    const double xi = metric_distance(u1, u2, MetricKind::L2);
    if (xi == 0.0) throw UsageError("apollonius_ball: u1 and u2 coincide");

    const double denom = kappa * kappa - 1.0;
    ApolloniusBall ball;
    ball.kappa = kappa;
    ball.radius = kappa / denom * xi;
    ball.center.resize(u1.size());
    for (std::size_t k = 0; k < u1.size(); ++k)
        ball.center[k] = u2[k] + (u2[k] - u1[k]) / denom;
    return ball;
}

struct PruneConfig {
    double alpha = 2.0;
    std::optional<std::size_t> degree_cap;
};

/// Robust prune: repeatedly keep the closest remaining candidate p and drop
/// every candidate f with alpha * d(p,f) < d(v,f).  Returns the kept
/// candidates in selection order.
inline std::vector<std::uint32_t> robust_prune(const PointSet& ps, std::uint32_t v,
                                               std::span<const std::uint32_t> candidates,
                                               const PruneConfig& cfg) {
    if (!(cfg.alpha > 1.0)) throw UsageError("robust_prune: alpha must exceed 1");
    for (std::uint32_t c : candidates)
        if (c == v) throw UsageError("robust_prune: vertex appears among its candidates");

    std::vector<std::uint32_t> pool(candidates.begin(), candidates.end());
    std::vector<double> dist_v(ps.size(), 0.0);
    for (std::uint32_t c : pool) dist_v[c] = ps.dist(v, c);
    std::sort(pool.begin(), pool.end(), [&](std::uint32_t a, std::uint32_t b) {
        return dist_v[a] != dist_v[b] ? dist_v[a] < dist_v[b] : a < b;
    });

    std::vector<std::uint32_t> selected;
    std::size_t head = 0;
    while (head < pool.size()) {
        const std::uint32_t p = pool[head++];
        selected.push_back(p);
        if (cfg.degree_cap && selected.size() >= *cfg.degree_cap) break;

        std::size_t keep = head;
        for (std::size_t i = head; i < pool.size(); ++i) {
            const std::uint32_t f = pool[i];
            if (!(cfg.alpha * ps.dist(p, f) < dist_v[f])) pool[keep++] = f;
        }
        pool.resize(keep);
    }
    return selected;
}

/// Exhaustive DiskANN-style construction: every vertex prunes the full point
/// set.  The result is alpha-navigable by construction.  Work splits across
/// threads by vertex; the output does not depend on the thread count.
inline NavGraph build_slow_diskann(const PointSet& ps, double alpha, unsigned threads = 1) {
    if (!(alpha > 1.0)) throw UsageError("build_slow_diskann: alpha must exceed 1");
    const std::size_t n = ps.size();

    NavGraph g;
    g.kind = GraphKind::Diskann;
    g.n = n;
    g.out.assign(n, {});
    g.order.resize(n);
    g.rank_of.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) g.order[i] = g.rank_of[i] = i;
    g.eps_build = alpha;

    auto prune_range = [&](std::uint32_t lo, std::uint32_t hi) {
        std::vector<std::uint32_t> others(n - 1);
        for (std::uint32_t v = lo; v < hi; ++v) {
            std::size_t w = 0;
            for (std::uint32_t i = 0; i < n; ++i)
                if (i != v) others[w++] = i;
            auto sel = robust_prune(ps, v, others, {alpha, std::nullopt});
            std::sort(sel.begin(), sel.end());
            g.out[v] = std::move(sel);
        }
    };

    if (threads <= 1 || n < 2 * threads) {
        prune_range(0, static_cast<std::uint32_t>(n));
    } else {
        std::vector<std::thread> pool;
        const std::uint32_t chunk = static_cast<std::uint32_t>((n + threads - 1) / threads);
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint32_t lo = t * chunk;
            const std::uint32_t hi = std::min<std::uint32_t>(lo + chunk, n);
            if (lo >= hi) break;
            pool.emplace_back(prune_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return g;
}

/// One robust-prune run recorded for plotting: the selected centers and the
/// Apollonius disk each one swept.
struct PruneFigure {
    struct Disk {
        std::vector<double> center;
        double radius = 0.0;
    };
    std::uint32_t vertex = 0;
    double alpha = 0.0;
    std::vector<std::uint32_t> selected;
    std::vector<Disk> disks; // disks[i] belongs to selected[i]
};

inline PruneFigure prune_figure_dump(const PointSet& ps, std::uint32_t v, double alpha) {
    if (ps.dim() != 2) throw UsageError("prune figure dump needs 2D points");
    if (ps.metric() != MetricKind::L2)
        throw UsageError("prune figure dump needs the l2 metric (disk geometry)");
    if (v >= ps.size()) throw UsageError("prune figure dump: vertex out of range");

    std::vector<std::uint32_t> others;
    others.reserve(ps.size() - 1);
    for (std::uint32_t i = 0; i < ps.size(); ++i)
        if (i != v) others.push_back(i);

    PruneFigure fig;
    fig.vertex = v;
    fig.alpha = alpha;
    fig.selected = robust_prune(ps, v, others, {alpha, std::nullopt});
    fig.disks.reserve(fig.selected.size());
    for (std::uint32_t p : fig.selected) {
        const ApolloniusBall ball = apollonius_ball(ps.point(v), ps.point(p), alpha);
        fig.disks.push_back({ball.center, ball.radius});
    }
    return fig;
}

inline void write_prune_csv(const PruneFigure& fig, const PointSet& ps, std::ostream& out) {
    out << "kind,center_x,center_y,radius\n";
    for (std::uint32_t p : fig.selected)
        out << "selected," << ps.point(p)[0] << ',' << ps.point(p)[1] << ",0\n";
    for (const auto& d : fig.disks)
        out << "disk," << d.center[0] << ',' << d.center[1] << ',' << d.radius << '\n';
}

inline void write_prune_svg(const PruneFigure& fig, const PointSet& ps, std::ostream& out) {
    double lo_x = ps.point(fig.vertex)[0], hi_x = lo_x;
    double lo_y = ps.point(fig.vertex)[1], hi_y = lo_y;
    auto grow = [&](double x, double y, double r) {
        lo_x = std::min(lo_x, x - r);
        hi_x = std::max(hi_x, x + r);
        lo_y = std::min(lo_y, y - r);
        hi_y = std::max(hi_y, y + r);
    };
    for (std::uint32_t i = 0; i < ps.size(); ++i) grow(ps.point(i)[0], ps.point(i)[1], 0.0);
    for (const auto& d : fig.disks) grow(d.center[0], d.center[1], d.radius);

    const double w = hi_x - lo_x, h = hi_y - lo_y;
    const double pad = 0.02 * std::max(w, h);
    const double dot = 0.004 * std::max(w, h);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << lo_x - pad << ' '
        << lo_y - pad << ' ' << w + 2 * pad << ' ' << h + 2 * pad << "\">\n";
    for (const auto& d : fig.disks)
        out << "  <circle cx=\"" << d.center[0] << "\" cy=\"" << d.center[1] << "\" r=\""
            << d.radius << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"" << dot / 2
            << "\"/>\n";
    for (std::uint32_t p : fig.selected)
        out << "  <circle cx=\"" << ps.point(p)[0] << "\" cy=\"" << ps.point(p)[1] << "\" r=\""
            << dot << "\" fill=\"#d04030\"/>\n";
    out << "  <circle cx=\"" << ps.point(fig.vertex)[0] << "\" cy=\"" << ps.point(fig.vertex)[1]
        << "\" r=\"" << dot * 1.5 << "\" fill=\"#2040c0\"/>\n";
    out << "</svg>\n";
}

} // namespace navgraph
