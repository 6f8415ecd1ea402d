#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "navgraph/generators.hpp"
#include "navgraph/prune.hpp"

using namespace navgraph;

namespace {

PointSet line_points() {
    // v = index 0 at the origin, candidates at 1, 1.2 and 5.
    return PointSet::from_rows({{0.0}, {1.0}, {1.2}, {5.0}}, MetricKind::L2);
}

}  // namespace

TEST_CASE("apollonius ball reproduces the closed forms") {
    const std::vector<double> u1{0.0, 0.0};
    const std::vector<double> u2{1.0, 0.0};

    SECTION("kappa = 2") {
        const ApolloniusBall b = apollonius_ball(u1, u2, 2.0);
        REQUIRE(b.center[0] == Catch::Approx(4.0 / 3.0).margin(1e-12));
        REQUIRE(b.center[1] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(b.radius == Catch::Approx(2.0 / 3.0).margin(1e-12));
        REQUIRE(b.kappa == 2.0);
    }
    SECTION("kappa = 3") {
        const ApolloniusBall b = apollonius_ball(u1, u2, 3.0);
        REQUIRE(b.center[0] == Catch::Approx(1.0 + 1.0 / 8.0).margin(1e-12));
        REQUIRE(b.center[1] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(b.radius == Catch::Approx(3.0 / 8.0).margin(1e-12));
    }
    SECTION("kappa = 2/eps + 1 matches the eps closed forms") {
        // With kappa = 2/eps + 1 the ball around u2 has center offset
        // eps^2/(4(1+eps)) * xi and radius (1+eps/2) * eps/(2(1+eps)) * xi.
        for (double eps : {0.1, 0.25, 0.5, 1.0, 2.0}) {
            const double kappa = 2.0 / eps + 1.0;
            const ApolloniusBall b = apollonius_ball(u1, u2, kappa);
            const double offset = eps * eps / (4.0 * (1.0 + eps));
            const double radius = (1.0 + eps / 2.0) * eps / (2.0 * (1.0 + eps));
            REQUIRE(b.center[0] == Catch::Approx(1.0 + offset).margin(1e-12));
            REQUIRE(b.radius == Catch::Approx(radius).margin(1e-12));
        }
    }
    SECTION("scale and translation covariance") {
        const std::vector<double> a{2.0, -1.0};
        const std::vector<double> c{2.0, 3.0};  // xi = 4
        const ApolloniusBall b = apollonius_ball(a, c, 2.0);
        REQUIRE(b.center[0] == Catch::Approx(2.0).margin(1e-12));
        REQUIRE(b.center[1] == Catch::Approx(3.0 + 4.0 / 3.0).margin(1e-12));
        REQUIRE(b.radius == Catch::Approx(8.0 / 3.0).margin(1e-12));
    }
}

TEST_CASE("apollonius ball validates its arguments") {
    const std::vector<double> u1{0.0, 0.0};
    const std::vector<double> u2{1.0, 0.0};
    const std::vector<double> u3{1.0};
    REQUIRE_THROWS_AS(apollonius_ball(u1, u2, 1.0), UsageError);
    REQUIRE_THROWS_AS(apollonius_ball(u1, u2, 0.5), UsageError);
    REQUIRE_THROWS_AS(apollonius_ball(u1, u1, 2.0), UsageError);
    REQUIRE_THROWS_AS(apollonius_ball(u1, u3, 2.0), UsageError);
}

TEST_CASE("apollonius ball membership matches the distance inequality") {
    SeededRng rng(4242);
    std::size_t checked = 0;
    for (std::size_t trial = 0; trial < 20000; ++trial) {
        const std::vector<double> u1{rng.unit(), rng.unit()};
        const std::vector<double> u2{rng.unit(), rng.unit()};
        if (metric_distance(u1, u2, MetricKind::L2) < 1e-6) continue;
        const double kappa = 1.0 + 0.1 + 5.0 * rng.unit();
        const ApolloniusBall ball = apollonius_ball(u1, u2, kappa);

        // Sample near the ball so both sides of the boundary show up.
        const double span = 3.0 * ball.radius + 1.0;
        const std::vector<double> p{ball.center[0] + span * (rng.unit() - 0.5),
                                    ball.center[1] + span * (rng.unit() - 0.5)};
        const double d1 = metric_distance(u1, p, MetricKind::L2);
        const double d2 = metric_distance(u2, p, MetricKind::L2);
        const double dc = metric_distance(ball.center, p, MetricKind::L2);
        if (std::abs(d1 - kappa * d2) < 1e-9 || std::abs(dc - ball.radius) < 1e-9)
            continue;  // boundary, either verdict is defensible
        REQUIRE((d1 >= kappa * d2) == (dc <= ball.radius));
        ++checked;
    }
    REQUIRE(checked > 15000);
}

TEST_CASE("robust prune keeps the documented survivors on the line instance") {
    const PointSet ps = line_points();
    const std::vector<std::uint32_t> cands{1, 2, 3};

    SECTION("alpha 2 drops the point shadowed by its closer neighbor") {
        const auto sel = robust_prune(ps, 0, cands, {2.0, std::nullopt});
        REQUIRE(sel == std::vector<std::uint32_t>{1, 3});
    }
    SECTION("alpha near 1 prunes aggressively down to the nearest point") {
        const auto sel = robust_prune(ps, 0, cands, {1.05, std::nullopt});
        REQUIRE(sel == std::vector<std::uint32_t>{1});
    }
    SECTION("huge alpha disables pruning and keeps every candidate") {
        // The removal test alpha*d(p,f) < d(v,f) fails for every f once
        // alpha is large, so the whole pool survives in distance order.
        const auto sel = robust_prune(ps, 0, cands, {1000.0, std::nullopt});
        REQUIRE(sel == std::vector<std::uint32_t>{1, 2, 3});
    }
    SECTION("degree cap truncates the selection to a prefix") {
        const auto full = robust_prune(ps, 0, cands, {1000.0, std::nullopt});
        const auto capped = robust_prune(ps, 0, cands, {1000.0, 2});
        REQUIRE(capped.size() == 2);
        REQUIRE(std::equal(capped.begin(), capped.end(), full.begin()));
    }
    SECTION("singleton candidate set survives untouched") {
        const std::vector<std::uint32_t> one{3};
        REQUIRE(robust_prune(ps, 0, one, {2.0, std::nullopt}) ==
                std::vector<std::uint32_t>{3});
    }
}

TEST_CASE("robust prune validates its arguments") {
    const PointSet ps = line_points();
    const std::vector<std::uint32_t> cands{1, 2, 3};
    const std::vector<std::uint32_t> self{1, 0, 3};
    REQUIRE_THROWS_AS(robust_prune(ps, 0, cands, {1.0, std::nullopt}), UsageError);
    REQUIRE_THROWS_AS(robust_prune(ps, 0, cands, {0.5, std::nullopt}), UsageError);
    REQUIRE_THROWS_AS(robust_prune(ps, 0, self, {2.0, std::nullopt}), UsageError);
}

TEST_CASE("robust prune output is ordered and covers what it removed") {
    const PointSet ps =
        PointSet::from_rows(gen_uniform_cube(200, 2, 3131), MetricKind::L2);
    for (const double alpha : {2.0, 3.0}) {
        std::vector<std::uint32_t> cands;
        for (std::uint32_t i = 1; i < ps.size(); ++i) cands.push_back(i);
        const auto sel = robust_prune(ps, 0, cands, {alpha, std::nullopt});
        REQUIRE(!sel.empty());

        // Selected distances from v never decrease (selection order).
        for (std::size_t i = 1; i < sel.size(); ++i)
            REQUIRE(ps.dist(0, sel[i - 1]) <= ps.dist(0, sel[i]));

        // No selected point could have removed a later selected point.
        for (std::size_t i = 0; i < sel.size(); ++i)
            for (std::size_t j = i + 1; j < sel.size(); ++j)
                REQUIRE(!(alpha * ps.dist(sel[i], sel[j]) < ps.dist(0, sel[j])));

        // Every dropped candidate is covered by some selected point, and
        // the remover certificate is exactly strict membership in that
        // point's Apollonius disk around the dropped candidate's side.
        const std::set<std::uint32_t> kept(sel.begin(), sel.end());
        for (std::uint32_t f : cands) {
            if (kept.count(f)) continue;
            bool covered = false;
            for (std::uint32_t p : sel) {
                if (alpha * ps.dist(p, f) < ps.dist(0, f)) {
                    const ApolloniusBall ball =
                        apollonius_ball(ps.point(0), ps.point(p), alpha);
                    REQUIRE(metric_distance(ball.center, ps.point(f), MetricKind::L2) <=
                            ball.radius + 1e-9);
                    covered = true;
                    break;
                }
            }
            REQUIRE(covered);
        }
    }
}

TEST_CASE("slow diskann graph on tiny instances") {
    SECTION("two points link to each other") {
        const PointSet ps = PointSet::from_rows({{0.0}, {1.0}}, MetricKind::L2);
        const NavGraph g = build_slow_diskann(ps, 2.0);
        REQUIRE(g.kind == GraphKind::Diskann);
        REQUIRE(g.out[0] == std::vector<std::uint32_t>{1});
        REQUIRE(g.out[1] == std::vector<std::uint32_t>{0});
        REQUIRE(g.eps_build == 2.0);
    }
    SECTION("line instance out-list for the origin") {
        const NavGraph g = build_slow_diskann(line_points(), 2.0);
        REQUIRE(g.out[0] == std::vector<std::uint32_t>{1, 3});
    }
    SECTION("alpha validation") {
        REQUIRE_THROWS_AS(build_slow_diskann(line_points(), 1.0), UsageError);
    }
}

TEST_CASE("slow diskann graph is alpha-navigable") {
    const PointSet ps =
        PointSet::from_rows(gen_uniform_cube(120, 2, 555), MetricKind::L2);
    for (const double alpha : {2.0, 3.0}) {
        const NavGraph g = build_slow_diskann(ps, alpha);
        for (std::uint32_t s = 0; s < g.n; ++s) {
            REQUIRE(std::is_sorted(g.out[s].begin(), g.out[s].end()));
            for (std::uint32_t t = 0; t < g.n; ++t) {
                if (s == t) continue;
                if (std::binary_search(g.out[s].begin(), g.out[s].end(), t)) continue;
                bool navigable = false;
                for (std::uint32_t y : g.out[s])
                    if (alpha * ps.dist(y, t) < ps.dist(s, t)) {
                        navigable = true;
                        break;
                    }
                REQUIRE(navigable);
            }
        }
    }
}

TEST_CASE("slow diskann output does not depend on the thread count") {
    const PointSet ps =
        PointSet::from_rows(gen_uniform_cube(60, 2, 808), MetricKind::L2);
    const NavGraph a = build_slow_diskann(ps, 2.0, 1);
    const NavGraph b = build_slow_diskann(ps, 2.0, 3);
    const NavGraph c = build_slow_diskann(ps, 2.0, 16);
    REQUIRE(a.out == b.out);
    REQUIRE(a.out == c.out);
}

TEST_CASE("greedy routing on slow diskann meets the alpha ratio bound") {
    const PointSet ps =
        PointSet::from_rows(gen_uniform_cube(200, 2, 6161), MetricKind::L2);
    for (const double alpha : {2.0, 3.0, 5.0}) {
        const NavGraph g = build_slow_diskann(ps, alpha);
        const double bound = (alpha + 1.0) / (alpha - 1.0) + 0.05;
        const auto queries = gen_queries_in_bbox(ps, 50, 6262);
        for (const auto& q : queries) {
            const RoutingResult res = mature_greedy_route(g, ps, q);
            const NnResult nn = exact_nn(ps, q);
            REQUIRE(res.dist <= bound * nn.dist);
        }
        // Queries sitting on data points are answered exactly.
        for (std::uint32_t i : {0u, 7u, 199u}) {
            const std::vector<double> q(ps.point(i).begin(), ps.point(i).end());
            const RoutingResult res = mature_greedy_route(g, ps, q);
            REQUIRE(res.dist == 0.0);
            REQUIRE(res.answer == i);
        }
    }
}

TEST_CASE("prune figure pairs one disk with each selected point") {
    const PointSet ps =
        PointSet::from_rows(gen_island(300, 909), MetricKind::L2);
    const PruneFigure fig = prune_figure_dump(ps, 0, 4.0);

    REQUIRE(fig.vertex == 0);
    REQUIRE(fig.alpha == 4.0);
    REQUIRE(fig.disks.size() == fig.selected.size());
    REQUIRE(!fig.selected.empty());

    // Disk i is the Apollonius ball of (v, selected[i]).
    for (std::size_t i = 0; i < fig.selected.size(); ++i) {
        const ApolloniusBall ball =
            apollonius_ball(ps.point(0), ps.point(fig.selected[i]), 4.0);
        REQUIRE(fig.disks[i].radius == ball.radius);
        REQUIRE(fig.disks[i].center == ball.center);
    }

    // Every dropped candidate lies in at least one drawn disk.
    const std::set<std::uint32_t> kept(fig.selected.begin(), fig.selected.end());
    for (std::uint32_t f = 1; f < ps.size(); ++f) {
        if (kept.count(f)) continue;
        bool inside = false;
        for (const auto& d : fig.disks)
            if (metric_distance(d.center, ps.point(f), MetricKind::L2) <=
                d.radius + 1e-9) {
                inside = true;
                break;
            }
        REQUIRE(inside);
    }
}

TEST_CASE("prune figure with one candidate draws one disk") {
    const PointSet ps = PointSet::from_rows({{0.0, 0.0}, {1.0, 0.0}}, MetricKind::L2);
    const PruneFigure fig = prune_figure_dump(ps, 0, 2.0);
    REQUIRE(fig.selected == std::vector<std::uint32_t>{1});
    REQUIRE(fig.disks.size() == 1);
    REQUIRE(fig.disks[0].radius == Catch::Approx(2.0 / 3.0).margin(1e-12));
}

TEST_CASE("prune figure rejects unsupported point sets") {
    const PointSet d3 =
        PointSet::from_rows({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}, MetricKind::L2);
    REQUIRE_THROWS_AS(prune_figure_dump(d3, 0, 2.0), UsageError);
    const PointSet l1 = PointSet::from_rows({{0.0, 0.0}, {1.0, 0.0}}, MetricKind::L1);
    REQUIRE_THROWS_AS(prune_figure_dump(l1, 0, 2.0), UsageError);
    const PointSet ok = PointSet::from_rows({{0.0, 0.0}, {1.0, 0.0}}, MetricKind::L2);
    REQUIRE_THROWS_AS(prune_figure_dump(ok, 5, 2.0), UsageError);
}

TEST_CASE("prune figure emitters produce the documented shapes") {
    const PointSet ps =
        PointSet::from_rows(gen_uniform_cube(40, 2, 1212), MetricKind::L2);
    const PruneFigure fig = prune_figure_dump(ps, 0, 4.0);

    std::ostringstream csv;
    write_prune_csv(fig, ps, csv);
    std::istringstream is(csv.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    REQUIRE(line == "kind,center_x,center_y,radius");
    std::size_t selected_rows = 0, disk_rows = 0;
    while (std::getline(is, line)) {
        if (line.rfind("selected,", 0) == 0) {
            ++selected_rows;
            REQUIRE(line.substr(line.rfind(',')) == ",0");
        } else if (line.rfind("disk,", 0) == 0) {
            ++disk_rows;
        } else {
            FAIL("unexpected csv row: " << line);
        }
    }
    REQUIRE(selected_rows == fig.selected.size());
    REQUIRE(disk_rows == fig.disks.size());

    std::ostringstream svg;
    write_prune_svg(fig, ps, svg);
    const std::string s = svg.str();
    REQUIRE(s.rfind("<svg", 0) == 0);
    std::size_t circles = 0;
    for (std::size_t pos = s.find("<circle"); pos != std::string::npos;
         pos = s.find("<circle", pos + 1))
        ++circles;
    REQUIRE(circles == fig.disks.size() + fig.selected.size() + 1);
}
