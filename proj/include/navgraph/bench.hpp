#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "navgraph/beam.hpp"
#include "navgraph/errors.hpp"
#include "navgraph/generators.hpp"
#include "navgraph/metric.hpp"
#include "navgraph/perm_graph.hpp"
#include "navgraph/prune.hpp"
#include "navgraph/wspd_graph.hpp"

namespace navgraph {

enum class Method { Perm, Wspd, Wspd2Phase, DiskannSlow };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::Perm: return "perm";
        case Method::Wspd: return "wspd";
        case Method::Wspd2Phase: return "wspd2phase";
        case Method::DiskannSlow: return "diskann-slow";
    }
    throw UsageError("unknown method");
}

inline Method method_from_string(const std::string& s) {
    if (s == "perm") return Method::Perm;
    if (s == "wspd") return Method::Wspd;
    if (s == "wspd2phase") return Method::Wspd2Phase;
    if (s == "diskann-slow") return Method::DiskannSlow;
    throw UsageError("unknown method '" + s +
                     "' (expected perm, wspd, wspd2phase, or diskann-slow)");
}

struct BenchParams {
    Method method = Method::Perm;
    double eps = 0.25;
    double alpha = 2.0;
    bool early_stop = false;
    std::size_t beam = 0; // 0 = plain greedy walk for the diskann method
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool timings = false; // wall-clock numbers are nondeterministic, off by default
};

struct BenchRecord {
    std::string method;
    std::size_t n = 0;
    std::size_t d = 0;
    double eps = 0.0;
    double alpha = 0.0;
    std::size_t edge_count = 0;
    double build_seconds = 0.0;
    double ratio_mean = 0.0;
    double ratio_p95 = 0.0;
    double ratio_worst = 0.0;
    double hops_mean = 0.0;
    double edges_scanned_mean = 0.0;
    double distance_evals_mean = 0.0;
    double recall_at_1 = 0.0;
    double ratio_bound = 0.0; // 0 when no bound applies (beam search)
    std::size_t violations = 0;
    bool bound_is_hard = false;
};

struct BenchReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<BenchRecord> records;
    std::size_t hard_violations = 0;
};

/// Routes every query through the method under test, compares against the
/// exact oracle, and aggregates.  Ratio-bound violations are hard failures
/// for the perm and wspd methods; for the diskann baseline they are recorded
/// only.  The report is deterministic for a fixed (points, params, queries).
inline BenchReport run_accuracy_suite(const PointSet& ps, const BenchParams& params,
                                      const std::vector<std::vector<double>>& queries) {
    if (queries.empty()) throw UsageError("accuracy suite needs at least one query");

    BenchRecord rec;
    rec.method = to_string(params.method);
    rec.n = ps.size();
    rec.d = ps.dim();
    rec.eps = params.eps;
    rec.alpha = params.method == Method::DiskannSlow ? params.alpha : 0.0;

    const auto t0 = std::chrono::steady_clock::now();
    PermIndex perm;
    NavGraph graph, graph_half;
    switch (params.method) {
        case Method::Perm:
            perm = build_perm_graph(ps, params.eps);
            rec.edge_count = perm.graph.edge_count();
            break;
        case Method::Wspd:
            graph = build_wspd_graph(ps, params.eps);
            rec.edge_count = graph.edge_count();
            break;
        case Method::Wspd2Phase:
            graph_half = build_wspd_graph(ps, 0.5);
            graph = build_wspd_graph(ps, params.eps);
            rec.edge_count = graph.edge_count() + graph_half.edge_count();
            break;
        case Method::DiskannSlow:
            graph = build_slow_diskann(ps, params.alpha, params.threads);
            rec.edge_count = graph.edge_count();
            break;
    }
    if (params.timings) {
        rec.build_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    if (params.method == Method::DiskannSlow) {
        rec.ratio_bound =
            params.beam > 0 ? 0.0 : (params.alpha + 1.0) / (params.alpha - 1.0) + 0.05;
        rec.bound_is_hard = false;
    } else {
        rec.ratio_bound = 1.0 + params.eps;
        rec.bound_is_hard = true;
    }

    struct Outcome {
        double ratio = 1.0, hops = 0.0, scanned = 0.0, evals = 0.0;
        bool recall = false, violation = false;
    };
    const std::size_t m = queries.size();
    std::vector<Outcome> outcomes(m);

    auto run_one = [&](std::size_t qi) {
        const auto& q = queries[qi];
        RoutingResult res;
        switch (params.method) {
            case Method::Perm:
                res = greedy_route(perm.graph, ps, q, params.eps, params.early_stop);
                break;
            case Method::Wspd:
                res = wspd_greedy_route(graph, ps, q, params.eps);
                break;
            case Method::Wspd2Phase:
                res = two_phase_route(graph_half, graph, ps, q, params.eps);
                break;
            case Method::DiskannSlow:
                if (params.beam > 0)
                    res = beam_search(graph, ps, q, params.beam, 1).route;
                else
                    res = mature_greedy_route(graph, ps, q);
                break;
        }
        const NnResult oracle = exact_nn(ps, q);
        Outcome o;
        if (oracle.dist == 0.0)
            o.ratio = res.dist == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
        else
            o.ratio = res.dist / oracle.dist;
        o.hops = static_cast<double>(res.hops);
        o.scanned = static_cast<double>(res.edges_scanned);
        o.evals = static_cast<double>(res.distance_evals);
        o.recall = res.answer == oracle.index ||
                   std::abs(res.dist - oracle.dist) <= 1e-12 * std::max(1.0, oracle.dist);
        o.violation = rec.ratio_bound > 0.0 && o.ratio > rec.ratio_bound;
        outcomes[qi] = o;
    };

    if (params.threads <= 1 || m < 2 * params.threads) {
        for (std::size_t i = 0; i < m; ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (m + params.threads - 1) / params.threads;
        for (unsigned t = 0; t < params.threads; ++t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(lo + chunk, m);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) run_one(i);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::vector<double> ratios(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Outcome& o = outcomes[i];
        ratios[i] = o.ratio;
        rec.ratio_mean += o.ratio;
        rec.hops_mean += o.hops;
        rec.edges_scanned_mean += o.scanned;
        rec.distance_evals_mean += o.evals;
        rec.recall_at_1 += o.recall ? 1.0 : 0.0;
        rec.violations += o.violation ? 1 : 0;
        rec.ratio_worst = std::max(rec.ratio_worst, o.ratio);
    }
    rec.ratio_mean /= static_cast<double>(m);
    rec.hops_mean /= static_cast<double>(m);
    rec.edges_scanned_mean /= static_cast<double>(m);
    rec.distance_evals_mean /= static_cast<double>(m);
    rec.recall_at_1 /= static_cast<double>(m);
    std::sort(ratios.begin(), ratios.end());
    rec.ratio_p95 = ratios[(ratios.size() * 95 + 99) / 100 - 1];

    BenchReport report;
    report.suite = "accuracy";
    report.seed = params.seed;
    report.records.push_back(std::move(rec));
    report.hard_violations = report.records[0].bound_is_hard ? report.records[0].violations : 0;
    return report;
}

/// Builds the perm and wspd graphs at each size over generated data and
/// records edge growth.  No queries are run.
inline BenchReport run_scaling_suite(GeneratorKind gen, const std::vector<std::size_t>& sizes,
                                     double eps, std::uint64_t seed, std::size_t d = 2,
                                     bool timings = false) {
    if (sizes.empty()) throw UsageError("scaling suite needs at least one size");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1]) throw UsageError("scaling sizes must be ascending");

    BenchReport report;
    report.suite = "scaling";
    report.seed = seed;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::size_t n = sizes[i];
        const PointSet ps =
            PointSet::from_rows(make_points(gen, n, d, seed + i), MetricKind::L2);

        auto t0 = std::chrono::steady_clock::now();
        const PermIndex perm = build_perm_graph(ps, eps);
        BenchRecord pr;
        pr.method = "perm";
        pr.n = n;
        pr.d = ps.dim();
        pr.eps = eps;
        pr.edge_count = perm.graph.edge_count();
        if (timings)
            pr.build_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.records.push_back(std::move(pr));

        t0 = std::chrono::steady_clock::now();
        const NavGraph wg = build_wspd_graph(ps, eps);
        BenchRecord wr;
        wr.method = "wspd";
        wr.n = n;
        wr.d = ps.dim();
        wr.eps = eps;
        wr.edge_count = wg.edge_count();
        if (timings)
            wr.build_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.records.push_back(std::move(wr));
    }
    return report;
}

inline nlohmann::ordered_json record_to_json(const BenchRecord& r) {
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["n"] = r.n;
    j["d"] = r.d;
    j["eps"] = r.eps;
    j["alpha"] = r.alpha;
    j["edge_count"] = r.edge_count;
    j["build_seconds"] = r.build_seconds;
    j["ratio_mean"] = r.ratio_mean;
    j["ratio_p95"] = r.ratio_p95;
    j["ratio_worst"] = r.ratio_worst;
    j["hops_mean"] = r.hops_mean;
    j["edges_scanned_mean"] = r.edges_scanned_mean;
    j["distance_evals_mean"] = r.distance_evals_mean;
    j["recall_at_1"] = r.recall_at_1;
    j["ratio_bound"] = r.ratio_bound;
    j["violations"] = r.violations;
    return j;
}

inline std::string report_to_json(const BenchReport& rep) {
    nlohmann::ordered_json j;
    j["suite"] = rep.suite;
    j["seed"] = rep.seed;
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.records) j["records"].push_back(record_to_json(r));
    j["hard_violations"] = rep.hard_violations;
    return j.dump(2) + "\n";
}

inline std::string report_to_text(const BenchReport& rep) {
    std::ostringstream out;
    out << "suite: " << rep.suite << "  seed: " << rep.seed << '\n';
    out << std::left << std::setw(14) << "method" << std::right << std::setw(7) << "n"
        << std::setw(4) << "d" << std::setw(8) << "eps" << std::setw(7) << "alpha"
        << std::setw(10) << "|E|" << std::setw(10) << "|E|/n" << std::setw(10) << "ratio"
        << std::setw(10) << "p95" << std::setw(10) << "worst" << std::setw(9) << "hops"
        << std::setw(10) << "recall" << std::setw(6) << "viol" << '\n';
    for (const auto& r : rep.records) {
        out << std::left << std::setw(14) << r.method << std::right << std::setw(7) << r.n
            << std::setw(4) << r.d << std::setw(8) << std::setprecision(3) << r.eps
            << std::setw(7) << r.alpha << std::setw(10) << r.edge_count << std::setw(10)
            << std::fixed << std::setprecision(2)
            << static_cast<double>(r.edge_count) / static_cast<double>(r.n) << std::setw(10)
            << std::setprecision(4) << r.ratio_mean << std::setw(10) << r.ratio_p95
            << std::setw(10) << r.ratio_worst << std::setw(9) << std::setprecision(1)
            << r.hops_mean << std::setw(10) << std::setprecision(3) << r.recall_at_1
            << std::setw(6) << r.violations << '\n';
        out.unsetf(std::ios::fixed);
        out << std::setprecision(6);
    }
    out << "hard violations: " << rep.hard_violations << '\n';
    return out.str();
}

inline std::string report_to_csv(const BenchReport& rep) {
    std::ostringstream out;
    out << "method,n,d,eps,alpha,edge_count,edges_per_vertex,ratio_mean,ratio_p95,ratio_worst,"
           "hops_mean,recall_at_1,violations\n";
    for (const auto& r : rep.records) {
        out << r.method << ',' << r.n << ',' << r.d << ',' << r.eps << ',' << r.alpha << ','
            << r.edge_count << ',' << static_cast<double>(r.edge_count) / static_cast<double>(r.n)
            << ',' << r.ratio_mean << ',' << r.ratio_p95 << ',' << r.ratio_worst << ','
            << r.hops_mean << ',' << r.recall_at_1 << ',' << r.violations << '\n';
    }
    return out.str();
}

} // namespace navgraph
