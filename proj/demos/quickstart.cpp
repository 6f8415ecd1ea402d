// Builds each graph flavor over a small random point set and answers one
// query with every routing scheme.
#include <iostream>

#include "navgraph/navgraph.hpp"

int main() {
    using namespace navgraph;

    const PointSet ps =
        PointSet::from_rows(gen_uniform_cube(400, 2, 42), MetricKind::L2);
    const std::vector<double> q = {0.3, 0.7};
    const NnResult truth = exact_nn(ps, q);
    std::cout << "n = " << ps.size() << ", query (0.3, 0.7), true nn dist = " << truth.dist
              << "\n\n";

    const double eps = 0.25;
    const PermIndex perm = build_perm_graph(ps, eps);
    const RoutingResult pr = greedy_route(perm.graph, ps, q, eps, true);
    std::cout << "perm graph:    " << perm.graph.edge_count() << " edges, answer dist "
              << pr.dist << " in " << pr.hops << " hops (" << pr.edges_scanned
              << " edges scanned, early stop " << (pr.early_stopped ? "hit" : "unused")
              << ")\n";

    const NavGraph wspd = build_wspd_graph(ps, eps);
    const RoutingResult wr = wspd_greedy_route(wspd, ps, q, eps);
    std::cout << "wspd graph:    " << wspd.edge_count() << " edges, answer dist " << wr.dist
              << " in " << wr.hops << " hops\n";

    const NavGraph ann = build_slow_diskann(ps, 2.0);
    const BeamResult br = beam_search(ann, ps, q, 8, 3);
    std::cout << "diskann-slow:  " << ann.edge_count() << " edges, beam answer dist "
              << br.route.dist << ", top-3:";
    for (std::uint32_t i : br.ranked) std::cout << ' ' << i;
    std::cout << '\n';
    return 0;
}
