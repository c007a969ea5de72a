#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "qlens/error.hpp"
#include "qlens/linalg.hpp"
#include "qlens/qsystem.hpp"
#include "qlens/triangulation.hpp"

namespace qlens {

/// Normal coordinates with 7 entries per tetrahedron: trigon counts at the local
/// vertices Top, Bottom, Left, Right, then the quad counts of types 1, 2, 3.
class FullCoordinates {
public:
    FullCoordinates() = default;
    explicit FullCoordinates(int p) : p_(p), entries_(7 * static_cast<std::size_t>(p), 0) {}
    explicit FullCoordinates(IntVector entries) : p_(static_cast<int>(entries.size() / 7)), entries_(std::move(entries)) {
        if (entries_.size() % 7 != 0)
            throw Error(ErrorKind::DimensionMismatch, "full coordinate length must be a multiple of 7");
    }

    int p() const { return p_; }
    const IntVector& entries() const { return entries_; }

    static std::size_t trigon_index(int tet, int vertex) { return 7 * static_cast<std::size_t>(tet - 1) + vertex; }
    static std::size_t quad_index(int tet, int type) { return 7 * static_cast<std::size_t>(tet - 1) + 3 + type; }

    std::int64_t trigon(int tet, int vertex) const { return entries_[trigon_index(tet, vertex)]; }
    std::int64_t& trigon(int tet, int vertex) { return entries_[trigon_index(tet, vertex)]; }
    std::int64_t quad(int tet, int type) const { return entries_[quad_index(tet, type)]; }
    std::int64_t& quad(int tet, int type) { return entries_[quad_index(tet, type)]; }

    QVector quads() const {
        QVector v = QVector::zeros(p_);
        for (int i = 1; i <= p_; ++i)
            for (int t = 1; t <= 3; ++t) v.at(i, t) = quad(i, t);
        return v;
    }

    /// Normal arcs at corner `vertex` of the face of `tet` opposite `opposite`.
    std::int64_t arcs(int tet, int opposite, int vertex) const {
        return trigon(tet, vertex) + quad(tet, quad_cutting(opposite, vertex));
    }

    friend bool operator==(const FullCoordinates&, const FullCoordinates&) = default;

private:
    int p_ = 0;
    IntVector entries_;
};

/// The three corners of the face opposite `opposite`, in increasing order.
inline std::array<int, 3> face_corners(int opposite) {
    std::array<int, 3> out{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != opposite) out[k++] = v;
    return out;
}

/// Haken's matching equations: for each face class and each corner of its first slot,
/// arcs on the first side minus arcs on the second side. Rows are ordered by gluing
/// (vertical faces, then horizontal), then by corner.
inline IntMatrix haken_matrix(const LensTriangulation& tri) {
    const int p = tri.p();
    IntMatrix h(6 * static_cast<std::size_t>(p), 7 * static_cast<std::size_t>(p), 0);
    std::size_t row = 0;
    for (const auto& g : tri.gluings()) {
        for (int v : face_corners(g.first.opposite)) {
            const int w = g.vertex_map[v];
            h(row, FullCoordinates::trigon_index(g.first.tet, v)) += 1;
            h(row, FullCoordinates::quad_index(g.first.tet, quad_cutting(g.first.opposite, v))) += 1;
            h(row, FullCoordinates::trigon_index(g.second.tet, w)) -= 1;
            h(row, FullCoordinates::quad_index(g.second.tet, quad_cutting(g.second.opposite, w))) -= 1;
            ++row;
        }
    }
    return h;
}

inline IntVector haken_residual(const LensTriangulation& tri, const FullCoordinates& full) {
    return multiply(haken_matrix(tri), std::span(full.entries()));
}

namespace detail {

inline void require_surface_quads(const LensTriangulation& tri, const QVector& v) {
    if (v.p() != tri.p())
        throw Error(ErrorKind::DimensionMismatch, "vector has " + std::to_string(v.size()) + " entries, expected " +
                                                      std::to_string(3 * tri.p()));
    if (!v.is_nonnegative()) throw Error(ErrorKind::NegativeEntry, "Q-coordinate has a negative entry");
    if (v.is_zero()) throw Error(ErrorKind::EmptyVector, "zero Q-coordinate");
    if (!is_q_solution(q_matrix(tri), v))
        throw Error(ErrorKind::NotASolution, "vector violates the Q-matching equations");
    if (!square_condition(v))
        throw Error(ErrorKind::SquareConditionViolated, "some tetrahedron carries two quad types");
}

} // namespace detail

/// Trigon counts determined by the quads, with no vertex-linking component.
///
/// Each Haken equation fixes the difference of two trigon counts. The differences are
/// propagated breadth-first through the corner graph; each connected piece (one per vertex
/// class) is then shifted so that its smallest count is 0.
inline FullCoordinates reconstruct_trigons(const LensTriangulation& tri, const QVector& v) {
    detail::require_surface_quads(tri, v);
    const int p = tri.p();
    FullCoordinates full(p);
    for (int i = 1; i <= p; ++i)
        for (int t = 1; t <= 3; ++t) full.quad(i, t) = v.at(i, t);

    struct Link {
        std::size_t to;
        std::int64_t diff; ///< value(to) - value(from)
    };
    const std::size_t corners = 4 * static_cast<std::size_t>(p);
    auto node = [](int tet, int vertex) { return 4 * static_cast<std::size_t>(tet - 1) + vertex; };
    std::vector<std::vector<Link>> adj(corners);
    for (const auto& g : tri.gluings()) {
        for (int a : face_corners(g.first.opposite)) {
            const int b = g.vertex_map[a];
            // t1(a) + x1 = t2(b) + x2
            const std::int64_t diff = v.at(g.first.tet, quad_cutting(g.first.opposite, a)) -
                                      v.at(g.second.tet, quad_cutting(g.second.opposite, b));
            const std::size_t u = node(g.first.tet, a);
            const std::size_t w = node(g.second.tet, b);
            adj[u].push_back({w, diff});
            adj[w].push_back({u, -diff});
        }
    }

    std::vector<std::int64_t> value(corners, 0);
    std::vector<int> piece(corners, -1);
    int pieces = 0;
    for (std::size_t start = 0; start < corners; ++start) {
        if (piece[start] >= 0) continue;
        std::deque<std::size_t> queue{start};
        piece[start] = pieces;
        std::vector<std::size_t> members;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            members.push_back(u);
            for (const auto& l : adj[u]) {
                const std::int64_t want = checked::add(value[u], l.diff);
                if (piece[l.to] < 0) {
                    piece[l.to] = pieces;
                    value[l.to] = want;
                    queue.push_back(l.to);
                } else if (value[l.to] != want) {
                    throw Error(ErrorKind::InconsistentPropagation,
                                "trigon differences around a vertex class do not close up");
                }
            }
        }
        std::int64_t lo = value[members.front()];
        for (auto u : members) lo = std::min(lo, value[u]);
        for (auto u : members) value[u] -= lo;
        ++pieces;
    }

    for (int i = 1; i <= p; ++i)
        for (int c = 0; c < 4; ++c) full.trigon(i, c) = value[node(i, c)];
    return full;
}

/// Intersection count of the surface with each edge class, indexed by Edge::row.
inline std::vector<std::int64_t> edge_weights(const LensTriangulation& tri, const FullCoordinates& full) {
    std::vector<std::int64_t> w(tri.num_edges(), -1);
    for (int i = 1; i <= tri.p(); ++i) {
        for (const auto& [a, b] : kLocalEdges) {
            std::int64_t count = full.trigon(i, a) + full.trigon(i, b);
            const int parallel = quad_parallel_to(a, b);
            for (int t = 1; t <= 3; ++t)
                if (t != parallel) count += full.quad(i, t);
            auto& slot = w[tri.edge_of(i, a, b).row(tri.p())];
            if (slot < 0) slot = count;
            else if (slot != count)
                throw Error(ErrorKind::InconsistentWeights,
                            "edge " + tri.edge_of(i, a, b).name() + " has weights " + std::to_string(slot) + " and " +
                                std::to_string(count));
        }
    }
    return w;
}

inline std::int64_t total_arcs(const LensTriangulation& tri, const FullCoordinates& full) {
    std::int64_t arcs = 0;
    for (const auto& g : tri.gluings())
        for (int v : face_corners(g.first.opposite)) arcs += full.arcs(g.first.tet, g.first.opposite, v);
    return arcs;
}

inline std::int64_t total_disks(const FullCoordinates& full) {
    return std::accumulate(full.entries().begin(), full.entries().end(), std::int64_t{0});
}

/// V - E + F of the cell structure cut out by the triangulation.
inline std::int64_t euler_characteristic(const LensTriangulation& tri, const FullCoordinates& full) {
    const auto w = edge_weights(tri, full);
    const std::int64_t points = std::accumulate(w.begin(), w.end(), std::int64_t{0});
    return points - total_arcs(tri, full) + total_disks(full);
}

/// Individual normal disks and the arc identifications between them.
struct DiskGraph {
    struct Disk {
        int tet = 1;
        bool is_quad = false;
        int kind = 0; ///< local vertex for a trigon, quad type for a quad
        std::int64_t copy = 0;
    };
    struct Link {
        std::size_t a = 0;
        std::size_t b = 0;
        bool reversing = false; ///< local orientations of a and b disagree across the arc
    };

    std::vector<Disk> disks;
    std::vector<Link> links;
    /// First disk index of each (tet, slot), slot 0..3 trigons and 4..6 quads.
    std::vector<std::size_t> offsets;

    std::size_t trigon(int tet, int vertex, std::int64_t copy) const {
        return offsets[7 * static_cast<std::size_t>(tet - 1) + vertex] + static_cast<std::size_t>(copy);
    }
    std::size_t quad(int tet, int type, std::int64_t copy) const {
        return offsets[7 * static_cast<std::size_t>(tet - 1) + 3 + type] + static_cast<std::size_t>(copy);
    }
};

namespace detail {

/// Quad copies are numbered from the side of the quad that contains local vertex Top.
inline bool on_top_side(int type, int vertex) { return vertex == Top || kQuadPartner[type - 1][Top] == vertex; }

/// The disk owning arc `k` (counted from the corner) at corner `v` of the face of `tet`
/// opposite `opp`, and whether its reference normal points away from the corner.
inline std::pair<std::size_t, bool> arc_owner(const DiskGraph& g, const FullCoordinates& full, int tet, int opp,
                                              int v, std::int64_t k) {
    const std::int64_t t = full.trigon(tet, v);
    if (k < t) return {g.trigon(tet, v, k), false};
    const int type = quad_cutting(opp, v);
    const std::int64_t x = full.quad(tet, type);
    const bool top = on_top_side(type, v);
    const std::int64_t j = top ? k - t : x - 1 - (k - t);
    return {g.quad(tet, type, j), !top};
}

/// The disk meeting the `k`-th point (counted from a) on the local edge (a, b) of `tet`.
inline std::size_t point_owner(const DiskGraph& g, const FullCoordinates& full, int tet, int a, int b,
                               std::int64_t k) {
    const std::int64_t ta = full.trigon(tet, a);
    if (k < ta) return g.trigon(tet, a, k);
    k -= ta;
    const int parallel = quad_parallel_to(a, b);
    for (int type = 1; type <= 3; ++type) {
        if (type == parallel) continue;
        const std::int64_t x = full.quad(tet, type);
        if (k < x) return g.quad(tet, type, on_top_side(type, a) ? k : x - 1 - k);
        k -= x;
    }
    return g.trigon(tet, b, full.trigon(tet, b) - 1 - k);
}

} // namespace detail

inline DiskGraph glue_disks(const LensTriangulation& tri, const FullCoordinates& full) {
    DiskGraph g;
    const int p = tri.p();
    g.offsets.resize(7 * static_cast<std::size_t>(p));
    for (int i = 1; i <= p; ++i) {
        for (int slot = 0; slot < 7; ++slot) {
            const std::int64_t n = full.entries()[7 * static_cast<std::size_t>(i - 1) + slot];
            if (n < 0) throw Error(ErrorKind::NegativeEntry, "negative normal coordinate");
            g.offsets[7 * static_cast<std::size_t>(i - 1) + slot] = g.disks.size();
            const bool quad = slot >= 4;
            for (std::int64_t c = 0; c < n; ++c) g.disks.push_back({i, quad, quad ? slot - 3 : slot, c});
        }
    }
    for (const auto& gl : tri.gluings()) {
        for (int v : face_corners(gl.first.opposite)) {
            const int w = gl.vertex_map[v];
            const std::int64_t n1 = full.arcs(gl.first.tet, gl.first.opposite, v);
            const std::int64_t n2 = full.arcs(gl.second.tet, gl.second.opposite, w);
            if (n1 != n2)
                throw Error(ErrorKind::ArityMismatch, "face corner carries " + std::to_string(n1) + " arcs on one side and " +
                                                          std::to_string(n2) + " on the other");
            for (std::int64_t k = 0; k < n1; ++k) {
                const auto [da, fa] = detail::arc_owner(g, full, gl.first.tet, gl.first.opposite, v, k);
                const auto [db, fb] = detail::arc_owner(g, full, gl.second.tet, gl.second.opposite, w, k);
                g.links.push_back({da, db, (fa != fb) != !gl.is_odd_permutation()});
            }
        }
    }
    return g;
}

/// Topology of one connected component.
struct ComponentReport {
    std::int64_t euler = 0;
    bool orientable = true;
    std::size_t disks = 0;
    std::vector<std::int64_t> edge_weights; ///< indexed by Edge::row

    friend bool operator==(const ComponentReport&, const ComponentReport&) = default;
};

struct SurfaceReport {
    FullCoordinates full;
    std::int64_t euler = 0;
    bool orientable = true;
    std::vector<ComponentReport> components;
    std::vector<std::int64_t> edge_weights; ///< indexed by Edge::row
    bool meets_cores_once = false;
    bool has_type23_quad = false;

    std::int64_t weight(const LensTriangulation& tri, Edge e) const { return edge_weights[e.row(tri.p())]; }
};

/// Splits the reconstructed surface into components and computes their Euler
/// characteristic and orientability. Components are ordered by their first disk.
inline std::vector<ComponentReport> surface_components(const LensTriangulation& tri, const FullCoordinates& full) {
    const DiskGraph g = glue_disks(tri, full);
    const std::size_t n = g.disks.size();
    std::vector<std::vector<std::pair<std::size_t, bool>>> adj(n);
    for (const auto& l : g.links) {
        adj[l.a].push_back({l.b, l.reversing});
        adj[l.b].push_back({l.a, l.reversing});
    }
    std::vector<int> comp(n, -1);
    std::vector<int> colour(n, 0);
    std::vector<ComponentReport> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        const int c = static_cast<int>(out.size());
        out.push_back({0, true, 0, std::vector<std::int64_t>(tri.num_edges(), 0)});
        std::deque<std::size_t> queue{s};
        comp[s] = c;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            ++out[c].disks;
            for (const auto& [w, rev] : adj[u]) {
                const int want = colour[u] ^ static_cast<int>(rev);
                if (comp[w] < 0) {
                    comp[w] = c;
                    colour[w] = want;
                    queue.push_back(w);
                } else if (colour[w] != want) {
                    out[c].orientable = false;
                }
            }
        }
    }

    // vertices: every point on an edge class, located in one slot of that class
    std::vector<bool> seen(tri.num_edges(), false);
    for (int i = 1; i <= tri.p(); ++i) {
        for (const auto& [a, b] : kLocalEdges) {
            const int row = tri.edge_of(i, a, b).row(tri.p());
            if (seen[row]) continue;
            seen[row] = true;
            std::int64_t w = full.trigon(i, a) + full.trigon(i, b);
            const int parallel = quad_parallel_to(a, b);
            for (int t = 1; t <= 3; ++t)
                if (t != parallel) w += full.quad(i, t);
            for (std::int64_t k = 0; k < w; ++k) {
                auto& cr = out[comp[detail::point_owner(g, full, i, a, b, k)]];
                cr.euler += 1;
                cr.edge_weights[row] += 1;
            }
        }
    }
    // edges: arcs, counted once per face class from its first slot
    for (const auto& gl : tri.gluings())
        for (int v : face_corners(gl.first.opposite))
            for (std::int64_t k = 0; k < full.arcs(gl.first.tet, gl.first.opposite, v); ++k)
                out[comp[detail::arc_owner(g, full, gl.first.tet, gl.first.opposite, v, k).first]].euler -= 1;
    for (auto& cr : out) cr.euler += static_cast<std::int64_t>(cr.disks);
    return out;
}

inline SurfaceReport classify(const LensTriangulation& tri, const QVector& v) {
    SurfaceReport r;
    r.full = reconstruct_trigons(tri, v);
    r.edge_weights = edge_weights(tri, r.full);
    r.euler = euler_characteristic(tri, r.full);
    r.components = surface_components(tri, r.full);
    std::int64_t sum = 0;
    for (const auto& c : r.components) {
        sum += c.euler;
        r.orientable = r.orientable && c.orientable;
        const bool odd_v = c.edge_weights[Edge::vertical().row(tri.p())] % 2 != 0;
        const bool odd_h = c.edge_weights[Edge::horizontal().row(tri.p())] % 2 != 0;
        if (odd_v != !c.orientable || odd_h != !c.orientable)
            throw Error(ErrorKind::InconsistentWeights, "core-circle parity disagrees with orientability");
    }
    if (sum != r.euler) throw Error(ErrorKind::InconsistentWeights, "component Euler characteristics do not add up");
    r.meets_cores_once = r.weight(tri, Edge::vertical()) == 1 && r.weight(tri, Edge::horizontal()) == 1;
    for (int i = 1; i <= tri.p(); ++i)
        r.has_type23_quad = r.has_type23_quad || v.at(i, 2) != 0 || v.at(i, 3) != 0;
    return r;
}

/// Sufficient condition for fundamentality in Haken's system: the surface meets each core
/// circle once and contains a quad of type 2 or 3.
inline bool haken_fundamental_criterion(const LensTriangulation& tri, const QVector& v) {
    const SurfaceReport r = classify(tri, v);
    return r.meets_cores_once && r.has_type23_quad;
}

/// Conventional name of a closed connected surface.
inline std::string surface_name(bool orientable, std::int64_t euler) {
    if (orientable) {
        if (euler == 2) return "sphere";
        if (euler == 0) return "torus";
        if (euler < 0 && euler % 2 == 0) return "genus " + std::to_string(1 - euler / 2) + " surface";
        return "orientable chi=" + std::to_string(euler);
    }
    if (euler == 1) return "projective plane";
    if (euler == 0) return "Klein bottle";
    if (euler < 0) return "connected sum of " + std::to_string(2 - euler) + " projective planes";
    return "non-orientable chi=" + std::to_string(euler);
}

inline std::string surface_name(const SurfaceReport& r) {
    if (r.components.size() == 1) return surface_name(r.orientable, r.euler);
    std::string out;
    for (const auto& c : r.components) {
        if (!out.empty()) out += " + ";
        out += surface_name(c.orientable, c.euler);
    }
    return out;
}

} // namespace qlens
