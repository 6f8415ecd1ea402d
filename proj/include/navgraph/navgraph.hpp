#pragma once

#include "navgraph/beam.hpp"
#include "navgraph/bench.hpp"
#include "navgraph/errors.hpp"
#include "navgraph/generators.hpp"
#include "navgraph/greedy_permutation.hpp"
#include "navgraph/index_io.hpp"
#include "navgraph/metric.hpp"
#include "navgraph/nav_graph.hpp"
#include "navgraph/perm_graph.hpp"
#include "navgraph/point_io.hpp"
#include "navgraph/prune.hpp"
#include "navgraph/wspd.hpp"
#include "navgraph/wspd_graph.hpp"
