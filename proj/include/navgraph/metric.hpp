#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "navgraph/errors.hpp"

namespace navgraph {

enum class MetricKind { L2, L1, LInf };

inline std::string to_string(MetricKind m) {
    switch (m) {
        case MetricKind::L2: return "l2";
        case MetricKind::L1: return "l1";
        case MetricKind::LInf: return "linf";
    }
    throw UsageError("unknown metric kind");
}

inline MetricKind metric_from_string(const std::string& s) {
    if (s == "l2") return MetricKind::L2;
    if (s == "l1") return MetricKind::L1;
    if (s == "linf") return MetricKind::LInf;
    throw UsageError("unknown metric '" + s + "' (expected l2, l1, or linf)");
}

/// Counts distance evaluations for a query session.  Every reported
/// distance_evals figure is fed by exactly one of these.
struct DistCounter {
    std::uint64_t evals = 0;
};

/// The single distance kernel.  Everything that measures a distance,
/// including the brute force oracle, goes through here.
inline double metric_distance(std::span<const double> a, std::span<const double> b,
                              MetricKind m, DistCounter* counter = nullptr) {
    if (a.size() != b.size())
        throw UsageError("dimension mismatch in distance computation");
    if (counter) ++counter->evals;
    switch (m) {
        case MetricKind::L2: {
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) {
                const double d = a[k] - b[k];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case MetricKind::L1: {
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
            return s;
        }
        case MetricKind::LInf: {
            double s = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) s = std::max(s, std::abs(a[k] - b[k]));
            return s;
        }
    }
    throw UsageError("unknown metric kind");
}

/// A finite metric space: n distinct points in d dimensions under a fixed norm.
/// Coordinates are stored flat, row major.
class PointSet {
  public:
    PointSet() = default;

    /// Validates and adopts a list of coordinate rows.  Rejects empty input,
    /// ragged rows, non finite values and duplicate points.
    static PointSet from_rows(const std::vector<std::vector<double>>& rows, MetricKind metric) {
        if (rows.empty()) throw DataError("point set is empty");
        const std::size_t dim = rows.front().size();
        if (dim == 0) throw DataError("points have dimension zero");
        PointSet ps;
        ps.dim_ = dim;
        ps.n_ = rows.size();
        ps.metric_ = metric;
        ps.coords_.reserve(ps.n_ * dim);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != dim)
                throw DataError("point " + std::to_string(i) + " has dimension " +
                                std::to_string(rows[i].size()) + ", expected " + std::to_string(dim));
            for (double v : rows[i]) {
                if (!std::isfinite(v))
                    throw DataError("point " + std::to_string(i) + " has a non finite coordinate");
                ps.coords_.push_back(v);
            }
        }
        ps.reject_duplicates();
        return ps;
    }

    std::size_t size() const { return n_; }
    std::size_t dim() const { return dim_; }
    MetricKind metric() const { return metric_; }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }

    /// Distance between stored points i and j.
    double dist(std::size_t i, std::size_t j, DistCounter* counter = nullptr) const {
        return metric_distance(point(i), point(j), metric_, counter);
    }

    /// Distance from stored point i to an external query point.
    double dist_to(std::size_t i, std::span<const double> q, DistCounter* counter = nullptr) const {
        if (q.size() != dim_)
            throw UsageError("query has dimension " + std::to_string(q.size()) +
                             ", point set has dimension " + std::to_string(dim_));
        return metric_distance(point(i), q, metric_, counter);
    }

    const std::vector<double>& raw_coords() const { return coords_; }

  private:
    void reject_duplicates() const {
        std::vector<std::uint32_t> idx(n_);
        for (std::uint32_t i = 0; i < n_; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
            const double* pa = coords_.data() + a * dim_;
            const double* pb = coords_.data() + b * dim_;
            return std::lexicographical_compare(pa, pa + dim_, pb, pb + dim_);
        });
        for (std::size_t k = 1; k < n_; ++k) {
            const double* pa = coords_.data() + idx[k - 1] * dim_;
            const double* pb = coords_.data() + idx[k] * dim_;
            if (std::equal(pa, pa + dim_, pb))
                throw DataError("duplicate point: indices " + std::to_string(idx[k - 1]) +
                                " and " + std::to_string(idx[k]) + " coincide");
        }
    }

    std::vector<double> coords_;
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    MetricKind metric_ = MetricKind::L2;
};

struct SpreadInfo {
    double diameter = 0.0;
    double closest_pair = 0.0;
    double spread = 0.0;
};

/// Exhaustive diameter / closest pair / spread computation, O(n^2).
inline SpreadInfo spread(const PointSet& ps) {
    const std::size_t n = ps.size();
    if (n < 2) throw UsageError("spread needs at least two points");
    double diam = 0.0;
    double cp = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = ps.dist(i, j);
            diam = std::max(diam, d);
            cp = std::min(cp, d);
        }
    }
    return {diam, cp, diam / cp};
}

struct NnResult {
    std::uint32_t index = 0;
    double dist = 0.0;
};

/// Brute force exact nearest neighbor.  Ties resolve to the lowest index.
inline NnResult exact_nn(const PointSet& ps, std::span<const double> q,
                         DistCounter* counter = nullptr) {
    NnResult best{0, ps.dist_to(0, q, counter)};
    for (std::uint32_t i = 1; i < ps.size(); ++i) {
        const double d = ps.dist_to(i, q, counter);
        if (d < best.dist) best = {i, d};
    }
    return best;
}

} // namespace navgraph
