#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "navgraph/errors.hpp"
#include "navgraph/metric.hpp"

namespace navgraph {

/// Deterministic double stream on top of mt19937_64.  The bit-to-double
/// mapping and the Box-Muller transform are spelled out here so the stream
/// never depends on library distribution internals.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        constexpr double two_pi = 6.283185307179586476925287;
        const double u1 = 1.0 - unit();
        const double u2 = unit();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(two_pi * u2);
        have_spare_ = true;
        return mag * std::cos(two_pi * u2);
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

enum class GeneratorKind { UniformCube, GaussianClusters, Geometric1D, Island };

inline GeneratorKind generator_from_string(const std::string& s) {
    if (s == "uniform") return GeneratorKind::UniformCube;
    if (s == "clusters") return GeneratorKind::GaussianClusters;
    if (s == "geometric") return GeneratorKind::Geometric1D;
    if (s == "island") return GeneratorKind::Island;
    throw UsageError("unknown generator '" + s +
                     "' (expected uniform, clusters, geometric, or island)");
}

inline std::vector<std::vector<double>> gen_uniform_cube(std::size_t n, std::size_t d,
                                                         std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (auto& row : rows)
        for (double& c : row) c = rng.unit();
    return rows;
}

inline std::vector<std::vector<double>> gen_gaussian_clusters(std::size_t n, std::size_t d,
                                                              std::uint64_t seed,
                                                              std::size_t clusters = 4,
                                                              double sigma = 0.05) {
    SeededRng rng(seed);
    std::vector<std::vector<double>> centers(clusters, std::vector<double>(d));
    for (auto& c : centers)
        for (double& x : c) x = rng.unit();
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = centers[i % clusters];
        for (std::size_t k = 0; k < d; ++k) rows[i][k] = c[k] + sigma * rng.normal();
    }
    return rows;
}

/// Spread-stress instance: 0, 1, 2, 4, ..., 2^(n-2).  Spread is 2^(n-2).
inline std::vector<std::vector<double>> gen_geometric_1d(std::size_t n) {
    if (n < 2) throw UsageError("geometric progression needs n >= 2");
    std::vector<std::vector<double>> rows;
    rows.reserve(n);
    rows.push_back({0.0});
    double v = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        rows.push_back({v});
        v *= 2.0;
    }
    return rows;
}

/// Uniform unit square with a central disk of radius 0.2 removed.
inline std::vector<std::vector<double>> gen_island(std::size_t n, std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<std::vector<double>> rows;
    rows.reserve(n);
    while (rows.size() < n) {
        const double x = rng.unit(), y = rng.unit();
        const double dx = x - 0.5, dy = y - 0.5;
        if (dx * dx + dy * dy < 0.2 * 0.2) continue;
        rows.push_back({x, y});
    }
    return rows;
}

inline std::vector<std::vector<double>> make_points(GeneratorKind kind, std::size_t n,
                                                    std::size_t d, std::uint64_t seed) {
    switch (kind) {
        case GeneratorKind::UniformCube: return gen_uniform_cube(n, d, seed);
        case GeneratorKind::GaussianClusters: return gen_gaussian_clusters(n, d, seed);
        case GeneratorKind::Geometric1D: return gen_geometric_1d(n);
        case GeneratorKind::Island: return gen_island(n, seed);
    }
    throw UsageError("unknown generator kind");
}

/// Query points drawn uniformly from the bounding box of a point set.
inline std::vector<std::vector<double>> gen_queries_in_bbox(const PointSet& ps, std::size_t m,
                                                            std::uint64_t seed) {
    std::vector<double> lo(ps.dim()), hi(ps.dim());
    for (std::size_t k = 0; k < ps.dim(); ++k) lo[k] = hi[k] = ps.point(0)[k];
    for (std::size_t i = 1; i < ps.size(); ++i)
        for (std::size_t k = 0; k < ps.dim(); ++k) {
            lo[k] = std::min(lo[k], ps.point(i)[k]);
            hi[k] = std::max(hi[k], ps.point(i)[k]);
        }
    SeededRng rng(seed);
    std::vector<std::vector<double>> qs(m, std::vector<double>(ps.dim()));
    for (auto& q : qs)
        for (std::size_t k = 0; k < ps.dim(); ++k) q[k] = rng.range(lo[k], hi[k]);
    return qs;
}

} // namespace navgraph
