#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "navgraph/navgraph.hpp"

namespace {

using namespace navgraph;

constexpr int kExitOk = 0;
constexpr int kExitGuaranteeViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + out_path + "' for writing");
    out << text;
}

struct BuildArgs {
    std::string input;
    std::string index_path;
    std::string method = "perm";
    std::string metric = "l2";
    std::string format = "text";
    std::string dump_pairs;
    double eps = 0.25;
    double alpha = 2.0;
    unsigned threads = 1;
};

int cmd_build(const BuildArgs& a) {
    const PointSet ps = load_points_file(a.input, metric_from_string(a.metric));
    const Method method = method_from_string(a.method);

    std::size_t edge_count = 0;
    std::size_t friend_edges = 0;
    if (method == Method::Perm) {
        const PermIndex idx = build_perm_graph(ps, a.eps);
        edge_count = idx.graph.edge_count();
        friend_edges = idx.perm.friend_edge_count();
        if (edge_count != friend_edges)
            throw DataError("internal mismatch: |E| != total friend list size");
        if (!a.index_path.empty()) save_index(idx, ps, a.index_path);
    } else if (method == Method::Wspd || method == Method::Wspd2Phase) {
        if (!a.index_path.empty())
            throw UsageError("index files store permutation graphs only; "
                             "drop --index for method " + a.method);
        const NavGraph g = build_wspd_graph(ps, a.eps);
        edge_count = g.edge_count();
        if (method == Method::Wspd2Phase) edge_count += build_wspd_graph(ps, 0.5).edge_count();
        if (!a.dump_pairs.empty()) {
            std::ofstream out(a.dump_pairs, std::ios::trunc);
            if (!out) throw IoError("cannot open '" + a.dump_pairs + "' for writing");
            build_wspd(ps, a.eps / 8.0).dump(out, ps);
        }
    } else {
        if (!a.index_path.empty())
            throw UsageError("index files store permutation graphs only; "
                             "drop --index for method " + a.method);
        edge_count = build_slow_diskann(ps, a.alpha, a.threads).edge_count();
    }

    if (a.format == "json") {
        nlohmann::ordered_json j;
        j["method"] = a.method;
        j["n"] = ps.size();
        j["d"] = ps.dim();
        j["metric"] = a.metric;
        if (method == Method::DiskannSlow)
            j["alpha"] = a.alpha;
        else
            j["eps"] = a.eps;
        j["edge_count"] = edge_count;
        if (!a.index_path.empty()) j["index"] = a.index_path;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "method: " << a.method << "  n: " << ps.size() << "  d: " << ps.dim()
                  << "  metric: " << a.metric << '\n';
        if (method == Method::DiskannSlow)
            std::cout << "alpha: " << a.alpha << '\n';
        else
            std::cout << "eps: " << a.eps << '\n';
        std::cout << "edges: " << edge_count << "  edges/vertex: "
                  << static_cast<double>(edge_count) / static_cast<double>(ps.size()) << '\n';
        if (method == Method::Perm)
            std::cout << "friend list total: " << friend_edges << '\n';
        if (!a.index_path.empty()) std::cout << "index written: " << a.index_path << '\n';
    }
    return kExitOk;
}

struct QueryArgs {
    std::string index_path;
    std::string point;
    std::string format = "text";
    bool early_stop = false;
    bool oracle = false;
};

int cmd_query(const QueryArgs& a) {
    const LoadedIndex loaded = load_index(a.index_path);
    const PointSet& ps = loaded.points;
    const std::vector<double> q = parse_coord_line(a.point);
    if (q.size() != ps.dim())
        throw UsageError("query has dimension " + std::to_string(q.size()) +
                         ", index has dimension " + std::to_string(ps.dim()));

    const RoutingResult res =
        greedy_route(loaded.index.graph, ps, q, loaded.index.graph.eps_query, a.early_stop);

    double ratio = 0.0;
    NnResult oracle;
    if (a.oracle) {
        oracle = exact_nn(ps, q);
        ratio = oracle.dist == 0.0 ? (res.dist == 0.0 ? 1.0 : -1.0) : res.dist / oracle.dist;
    }

    if (a.format == "json") {
        nlohmann::ordered_json j;
        j["answer_index"] = res.answer;
        j["answer"] = std::vector<double>(ps.point(res.answer).begin(),
                                          ps.point(res.answer).end());
        j["dist"] = res.dist;
        j["eps"] = loaded.index.graph.eps_query;
        j["hops"] = res.hops;
        j["edges_scanned"] = res.edges_scanned;
        j["distance_evals"] = res.distance_evals;
        j["early_stopped"] = res.early_stopped;
        if (a.oracle) {
            j["oracle_index"] = oracle.index;
            j["oracle_dist"] = oracle.dist;
            j["ratio"] = ratio;
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "answer index: " << res.answer << "  coords:";
        for (double c : ps.point(res.answer)) std::cout << ' ' << c;
        std::cout << "\ndist: " << res.dist << "  hops: " << res.hops
                  << "  edges scanned: " << res.edges_scanned
                  << "  distance evals: " << res.distance_evals
                  << "  early stopped: " << (res.early_stopped ? "yes" : "no") << '\n';
        if (a.oracle)
            std::cout << "oracle index: " << oracle.index << "  oracle dist: " << oracle.dist
                      << "  ratio: " << ratio << '\n';
    }
    return kExitOk;
}

struct BenchArgs {
    std::string input;
    std::string index_path;
    std::string gen = "uniform";
    std::string method = "perm";
    std::string metric = "l2";
    std::string suite = "accuracy";
    std::string format = "json";
    std::string out;
    std::size_t n = 500;
    std::size_t d = 2;
    std::size_t queries = 100;
    std::vector<std::size_t> sizes;
    double eps = 0.25;
    double alpha = 2.0;
    std::uint64_t seed = 1;
    std::size_t beam = 0;
    bool early_stop = false;
    unsigned threads = 1;
    bool timings = false;
};

int cmd_bench(const BenchArgs& a) {
    BenchReport report;
    if (a.suite == "accuracy") {
        PointSet ps = [&] {
            if (!a.index_path.empty()) return load_index(a.index_path).points;
            if (!a.input.empty()) return load_points_file(a.input, metric_from_string(a.metric));
            return PointSet::from_rows(make_points(generator_from_string(a.gen), a.n, a.d, a.seed),
                                       metric_from_string(a.metric));
        }();
        BenchParams params;
        params.method = method_from_string(a.method);
        params.eps = a.eps;
        params.alpha = a.alpha;
        params.early_stop = a.early_stop;
        params.beam = a.beam;
        params.seed = a.seed;
        params.threads = a.threads;
        params.timings = a.timings;
        const auto qs = gen_queries_in_bbox(ps, a.queries, a.seed + 1);
        report = run_accuracy_suite(ps, params, qs);
    } else if (a.suite == "scaling") {
        std::vector<std::size_t> sizes = a.sizes;
        if (sizes.empty()) sizes = {250, 500, 1000, 2000};
        report = run_scaling_suite(generator_from_string(a.gen), sizes, a.eps, a.seed, a.d,
                                   a.timings);
    } else {
        throw UsageError("unknown suite '" + a.suite + "' (expected accuracy or scaling)");
    }

    if (a.format == "json")
        write_output(report_to_json(report), a.out);
    else if (a.format == "csv")
        write_output(report_to_csv(report), a.out);
    else
        write_output(report_to_text(report), a.out);

    if (report.hard_violations > 0) {
        std::cerr << "guarantee violated: " << report.hard_violations
                  << " queries exceeded the proven ratio bound\n";
        return kExitGuaranteeViolation;
    }
    return kExitOk;
}

struct PruneFigArgs {
    std::string input;
    std::string metric = "l2";
    std::string out_csv = "-";
    std::string out_svg;
    double alpha = 4.0;
    std::uint32_t vertex = 0;
};

int cmd_prune_fig(const PruneFigArgs& a) {
    const PointSet ps = load_points_file(a.input, metric_from_string(a.metric));
    const PruneFigure fig = prune_figure_dump(ps, a.vertex, a.alpha);

    std::ostringstream csv;
    write_prune_csv(fig, ps, csv);
    write_output(csv.str(), a.out_csv);

    if (!a.out_svg.empty()) {
        std::ofstream svg(a.out_svg, std::ios::trunc);
        if (!svg) throw IoError("cannot open '" + a.out_svg + "' for writing");
        write_prune_svg(fig, ps, svg);
    }
    std::cerr << "selected " << fig.selected.size() << " of " << ps.size() - 1
              << " candidates\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"navigable proximity graphs over finite metric point sets"};
    app.require_subcommand(1);

    BuildArgs build_args;
    CLI::App* build = app.add_subcommand("build", "build a graph from a point file");
    build->add_option("input", build_args.input, "point file")->required();
    build->add_option("--index", build_args.index_path, "write a loadable index (perm only)");
    build->add_option("--method", build_args.method, "perm | wspd | wspd2phase | diskann-slow");
    build->add_option("--metric", build_args.metric, "l2 | l1 | linf");
    build->add_option("--eps", build_args.eps, "query accuracy target in (0,1)");
    build->add_option("--alpha", build_args.alpha, "prune slack, > 1");
    build->add_option("--format", build_args.format, "text | json");
    build->add_option("--dump-pairs", build_args.dump_pairs, "write the wspd pair list here");
    build->add_option("--threads", build_args.threads, "worker threads for diskann-slow");

    QueryArgs query_args;
    CLI::App* query = app.add_subcommand("query", "answer one query against a saved index");
    query->add_option("index", query_args.index_path, "index file")->required();
    query->add_option("--point", query_args.point, "query coordinates, e.g. '0.2,0.7'")
        ->required();
    query->add_flag("--early-stop", query_args.early_stop, "enable the early termination rule");
    query->add_flag("--oracle", query_args.oracle, "also run the exact oracle and report ratio");
    query->add_option("--format", query_args.format, "text | json");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "run an evaluation suite");
    bench->add_option("--input", bench_args.input, "point file to evaluate on");
    bench->add_option("--index", bench_args.index_path, "saved index to take points from");
    bench->add_option("--gen", bench_args.gen, "uniform | clusters | geometric | island");
    bench->add_option("--n", bench_args.n, "generated point count");
    bench->add_option("--d", bench_args.d, "generated dimension");
    bench->add_option("--queries", bench_args.queries, "query count");
    bench->add_option("--method", bench_args.method, "perm | wspd | wspd2phase | diskann-slow");
    bench->add_option("--metric", bench_args.metric, "l2 | l1 | linf");
    bench->add_option("--suite", bench_args.suite, "accuracy | scaling");
    bench->add_option("--sizes", bench_args.sizes, "scaling sizes, ascending")
        ->delimiter(',');
    bench->add_option("--eps", bench_args.eps, "query accuracy target in (0,1)");
    bench->add_option("--alpha", bench_args.alpha, "prune slack, > 1");
    bench->add_option("--seed", bench_args.seed, "rng seed");
    bench->add_option("--beam", bench_args.beam, "beam width (diskann-slow only, 0 = greedy)");
    bench->add_flag("--early-stop", bench_args.early_stop, "early termination (perm only)");
    bench->add_option("--format", bench_args.format, "json | text | csv");
    bench->add_option("--out", bench_args.out, "write the report here instead of stdout");
    bench->add_option("--threads", bench_args.threads, "query fan-out threads");
    bench->add_flag("--timings", bench_args.timings,
                    "include wall-clock build times (breaks byte determinism)");

    PruneFigArgs fig_args;
    CLI::App* fig = app.add_subcommand("prune-fig", "dump one robust-prune run for plotting");
    fig->add_option("input", fig_args.input, "2D point file")->required();
    fig->add_option("--metric", fig_args.metric, "l2");
    fig->add_option("--alpha", fig_args.alpha, "prune slack, > 1");
    fig->add_option("--vertex", fig_args.vertex, "vertex whose prune run is dumped");
    fig->add_option("--out-csv", fig_args.out_csv, "CSV path, '-' for stdout");
    fig->add_option("--out-svg", fig_args.out_svg, "optional SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(build)) return cmd_build(build_args);
        if (app.got_subcommand(query)) return cmd_query(query_args);
        if (app.got_subcommand(bench)) return cmd_bench(bench_args);
        if (app.got_subcommand(fig)) return cmd_prune_fig(fig_args);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
