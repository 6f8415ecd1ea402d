#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "navgraph/errors.hpp"
#include "navgraph/metric.hpp"
#include "navgraph/perm_graph.hpp"

namespace navgraph {

/// Index file layout, all integers little endian:
///
///   magic   "NAVG"            4 bytes
///   version u32               currently 1
///   metric  u8                0 = l2, 1 = l1, 2 = linf
///   n       u64
///   d       u32
///   eps     f64               query accuracy target
///   points  n*d f64           row major coordinates
///   order   n u32             rank -> point index
///   radii   (n-1) f64         insertion radii
///   offsets (n+1) u64         CSR row offsets into targets
///   targets |E| u32           destination ranks, ascending per row
///   crc     u32               CRC32 of every preceding byte
namespace detail {

inline constexpr std::uint32_t kIndexVersion = 1;
inline constexpr char kMagic[4] = {'N', 'A', 'V', 'G'};

inline std::uint32_t crc32(const std::uint8_t* data, std::size_t len) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

struct Writer {
    std::vector<std::uint8_t> buf;

    void u8(std::uint8_t v) { buf.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
};

struct Reader {
    const std::vector<std::uint8_t>& buf;
    std::size_t pos = 0;

    void need(std::size_t bytes) const {
        if (pos + bytes > buf.size()) throw IoError("truncated index file");
    }
    std::uint8_t u8() {
        need(1);
        return buf[pos++];
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
};

inline std::uint8_t metric_tag(MetricKind m) {
    switch (m) {
        case MetricKind::L2: return 0;
        case MetricKind::L1: return 1;
        case MetricKind::LInf: return 2;
    }
    throw UsageError("unknown metric kind");
}

inline MetricKind metric_from_tag(std::uint8_t t) {
    switch (t) {
        case 0: return MetricKind::L2;
        case 1: return MetricKind::L1;
        case 2: return MetricKind::LInf;
    }
    throw IoError("index file has unknown metric tag " + std::to_string(t));
}

} // namespace detail

inline std::vector<std::uint8_t> serialize_index(const PermIndex& idx, const PointSet& ps) {
    const NavGraph& g = idx.graph;
    if (g.n != ps.size()) throw UsageError("graph and point set sizes differ");
    detail::Writer w;
    w.buf.insert(w.buf.end(), detail::kMagic, detail::kMagic + 4);
    w.u32(detail::kIndexVersion);
    w.u8(detail::metric_tag(ps.metric()));
    w.u64(ps.size());
    w.u32(static_cast<std::uint32_t>(ps.dim()));
    w.f64(g.eps_query);
    for (double c : ps.raw_coords()) w.f64(c);
    for (std::uint32_t r : g.order) w.u32(r);
    for (double r : g.radii) w.f64(r);
    std::uint64_t off = 0;
    w.u64(0);
    for (const auto& row : g.out) {
        off += row.size();
        w.u64(off);
    }
    for (const auto& row : g.out)
        for (std::uint32_t t : row) w.u32(t);
    w.u32(detail::crc32(w.buf.data(), w.buf.size()));
    return w.buf;
}

inline void save_index(const PermIndex& idx, const PointSet& ps, const std::string& path) {
    const auto bytes = serialize_index(idx, ps);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to '" + path + "'");
}

struct LoadedIndex {
    PointSet points;
    PermIndex index;
};

inline LoadedIndex deserialize_index(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 4 + 4 + 1 + 8 + 4 + 8 + 4) throw IoError("truncated index file");
    if (std::memcmp(bytes.data(), detail::kMagic, 4) != 0)
        throw IoError("bad magic, not an index file");

    std::uint32_t stored_crc = 0;
    std::memcpy(&stored_crc, bytes.data() + bytes.size() - 4, 4);
    if constexpr (std::endian::native == std::endian::big) {
        stored_crc = __builtin_bswap32(stored_crc);
    }
    if (detail::crc32(bytes.data(), bytes.size() - 4) != stored_crc)
        throw IoError("checksum mismatch, index file is corrupt");

    detail::Reader r{bytes, 4};
    const std::uint32_t version = r.u32();
    if (version != detail::kIndexVersion)
        throw IoError("unsupported index version " + std::to_string(version));
    const MetricKind metric = detail::metric_from_tag(r.u8());
    const std::uint64_t n = r.u64();
    const std::uint32_t d = r.u32();
    const double eps_query = r.f64();
    if (n == 0 || d == 0) throw IoError("index file declares an empty point set");
    if (n > (1ull << 32) || d > (1u << 20) || n * d > bytes.size() / 8)
        throw IoError("truncated index file");

    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (auto& row : rows)
        for (double& c : row) c = r.f64();
    PointSet ps = PointSet::from_rows(rows, metric);

    GreedyPermutation gp;
    gp.order.resize(n);
    for (auto& o : gp.order) o = r.u32();
    {
        std::vector<char> seen(n, 0);
        for (std::uint32_t o : gp.order) {
            if (o >= n || seen[o]) throw IoError("index order block is not a permutation");
            seen[o] = 1;
        }
    }
    gp.radii.resize(n - 1);
    for (auto& rad : gp.radii) rad = r.f64();

    std::vector<std::uint64_t> offsets(n + 1);
    for (auto& o : offsets) o = r.u64();
    if (offsets.front() != 0) throw IoError("index adjacency offsets do not start at zero");
    for (std::size_t i = 0; i + 1 < offsets.size(); ++i)
        if (offsets[i] > offsets[i + 1]) throw IoError("index adjacency offsets not monotone");

    NavGraph g;
    g.kind = GraphKind::Perm;
    g.n = n;
    g.out.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        g.out[i].resize(offsets[i + 1] - offsets[i]);
        for (auto& t : g.out[i]) {
            t = r.u32();
            if (t >= n) throw IoError("index adjacency target out of range");
        }
    }
    if (r.pos != bytes.size() - 4) throw IoError("index file has trailing bytes");

    g.order = gp.order;
    g.rank_of.assign(n, 0);
    for (std::uint32_t rank = 0; rank < n; ++rank) g.rank_of[gp.order[rank]] = rank;
    g.radii = gp.radii;
    g.eps_query = eps_query;
    g.eps_build = routing_eps(eps_query);

    gp.friends.assign(n, {});
    for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t k : g.out[j]) gp.friends[k].push_back(j);
    for (auto& fl : gp.friends) std::sort(fl.begin(), fl.end());
    gp.eps_build = g.eps_build;

    return {std::move(ps), PermIndex{std::move(g), std::move(gp)}};
}

inline LoadedIndex load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open index file '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return deserialize_index(bytes);
}

} // namespace navgraph
