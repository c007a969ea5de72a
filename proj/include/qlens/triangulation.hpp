#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qlens/error.hpp"

namespace qlens {

/// Lens space parameters (p, q): p >= 2, 1 <= q <= p-1, gcd(p, q) = 1.
struct LensParams {
    int p = 0;
    int q = 0;

    friend bool operator==(const LensParams&, const LensParams&) = default;
    friend auto operator<=>(const LensParams&, const LensParams&) = default;
};

inline LensParams make_params(int p, int q) {
    if (p < 2)
        throw Error(ErrorKind::InvalidParams, "p must be at least 2 (got " + std::to_string(p) + ")");
    if (q < 1 || q > p - 1)
        throw Error(ErrorKind::InvalidParams,
                    "q must lie in [1, p-1] (got p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")");
    if (std::gcd(p, q) != 1)
        throw Error(ErrorKind::InvalidParams,
                    "gcd(p, q) must be 1 (got p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")");
    return LensParams{p, q};
}

/// Canonical representative of i modulo p in 1..p.
constexpr int wrap(int i, int p) {
    const int r = ((i - 1) % p + p) % p;
    return r + 1;
}

/// Every coprime (p, q) with 2 <= p <= max_p.
inline std::vector<LensParams> coprime_params(int max_p, int min_p = 2) {
    std::vector<LensParams> out;
    for (int p = min_p; p <= max_p; ++p)
        for (int q = 1; q < p; ++q)
            if (std::gcd(p, q) == 1) out.push_back({p, q});
    return out;
}

/// Local vertex labels of a tetrahedron tau_i = (v+, v-, v_i, v_{i+1}).
enum Corner : int { Top = 0, Bottom = 1, Left = 2, Right = 3 };

/// One of the p + 2 edge classes e_1..e_p, E_h, E_v.
struct Edge {
    enum class Kind : std::uint8_t { Spoke, Horizontal, Vertical };

    Kind kind = Kind::Spoke;
    int index = 0; ///< 1..p for spokes, 0 for E_h / E_v

    static Edge spoke(int i) { return {Kind::Spoke, i}; }
    static Edge horizontal() { return {Kind::Horizontal, 0}; }
    static Edge vertical() { return {Kind::Vertical, 0}; }

    /// Row of the Q-matching matrix: e_1..e_p, then E_h, then E_v.
    int row(int p) const {
        switch (kind) {
        case Kind::Spoke: return index - 1;
        case Kind::Horizontal: return p;
        case Kind::Vertical: return p + 1;
        }
        return -1;
    }
    static Edge from_row(int row, int p) {
        if (row < p) return spoke(row + 1);
        return row == p ? horizontal() : vertical();
    }

    std::string name() const {
        switch (kind) {
        case Kind::Spoke: return "e" + std::to_string(index);
        case Kind::Horizontal: return "Eh";
        case Kind::Vertical: return "Ev";
        }
        return "?";
    }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Quadrilateral type X_{tet,type}, tet in 1..p, type in 1..3.
struct QuadType {
    int tet = 1;
    int type = 1;
};

/// The six edges of a tetrahedron in a fixed local order, each as (a, b) with a < b.
inline constexpr std::array<std::array<int, 2>, 6> kLocalEdges{{
    {Top, Bottom}, {Top, Left}, {Top, Right}, {Bottom, Left}, {Bottom, Right}, {Left, Right}}};

inline constexpr int local_edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    for (int k = 0; k < 6; ++k)
        if (kLocalEdges[k][0] == a && kLocalEdges[k][1] == b) return k;
    return -1;
}

/// kQuadPartner[type-1][v] is the vertex on the same side as v for that quad type.
/// X_1 separates {v+,v-} (on E_v) from {v_i,v_{i+1}} (on E_h); X_2 separates the edge
/// v+v_{i+1} (= e_{i+1}) from v-v_i (= e_{i-q}); X_3 separates v+v_i (= e_i) from
/// v-v_{i+1} (= e_{i-q+1}).
inline constexpr std::array<std::array<int, 4>, 3> kQuadPartner{{
    {Bottom, Top, Right, Left},
    {Right, Left, Bottom, Top},
    {Left, Right, Top, Bottom}}};

/// Quad type (1..3) disjoint from the local edge (a, b).
inline constexpr int quad_parallel_to(int a, int b) {
    for (int t = 0; t < 3; ++t)
        if (kQuadPartner[t][a] == b) return t + 1;
    return 0;
}

/// Quad type (1..3) whose arc on the face opposite `opposite` cuts off corner `v`.
inline constexpr int quad_cutting(int opposite, int v) {
    for (int t = 0; t < 3; ++t)
        if (kQuadPartner[t][v] == opposite) return t + 1;
    return 0;
}

/// A face of a specific tetrahedron, named by the local vertex it omits.
struct FaceSlot {
    int tet = 1;
    int opposite = Top;

    friend bool operator==(const FaceSlot&, const FaceSlot&) = default;
};

/// One face class: two face slots and the vertex bijection between the tetrahedra.
/// `vertex_map[v]` is the local vertex of `second.tet` that `v` of `first.tet` is glued to;
/// the omitted vertices correspond, so the map is a permutation of {0,1,2,3}.
struct FaceGluing {
    enum class Kind : std::uint8_t { Vertical, Horizontal };

    Kind kind = Kind::Vertical;
    int index = 1; ///< V_i for vertical faces; upper tetrahedron tau_i for horizontal ones
    FaceSlot first;
    FaceSlot second;
    std::array<int, 4> vertex_map{};

    bool is_odd_permutation() const {
        int inversions = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                if (vertex_map[a] > vertex_map[b]) ++inversions;
        return inversions % 2 == 1;
    }
};

/// Combinatorial model of the p-tetrahedron triangulation T(p,q). Immutable.
class LensTriangulation {
public:
    explicit LensTriangulation(LensParams params) : params_(make_params(params.p, params.q)) {
        const int p = params_.p;
        const int q = params_.q;
        tet_edges_.resize(p);
        for (int i = 1; i <= p; ++i) {
            auto& e = tet_edges_[i - 1];
            e[local_edge_index(Top, Bottom)] = Edge::vertical();
            e[local_edge_index(Top, Left)] = Edge::spoke(i);
            e[local_edge_index(Top, Right)] = Edge::spoke(wrap(i + 1, p));
            e[local_edge_index(Bottom, Left)] = Edge::spoke(wrap(i - q, p));
            e[local_edge_index(Bottom, Right)] = Edge::spoke(wrap(i + 1 - q, p));
            e[local_edge_index(Left, Right)] = Edge::horizontal();
        }
        for (int i = 1; i <= p; ++i) {
            // V_i = (v+, v-, v_i): right-hand face of tau_{i-1}, left-hand face of tau_i
            gluings_.push_back(FaceGluing{FaceGluing::Kind::Vertical, i,
                                          FaceSlot{wrap(i - 1, p), Left}, FaceSlot{i, Right},
                                          {Top, Bottom, Right, Left}});
        }
        for (int i = 1; i <= p; ++i) {
            // upper face (v+, v_i, v_{i+1}) of tau_i onto lower face (v-, v_{i+q}, v_{i+q+1})
            gluings_.push_back(FaceGluing{FaceGluing::Kind::Horizontal, i,
                                          FaceSlot{i, Bottom}, FaceSlot{wrap(i + q, p), Top},
                                          {Bottom, Top, Left, Right}});
        }
    }

    const LensParams& params() const { return params_; }
    int p() const { return params_.p; }
    int q() const { return params_.q; }
    int num_tetrahedra() const { return params_.p; }
    int num_edges() const { return params_.p + 2; }
    int num_faces() const { return 2 * params_.p; }
    /// v+ ~ v- and all equatorial vertices are identified, leaving two vertex classes.
    int num_vertices() const { return 2; }

    /// Edge class of the local edge (a, b) of tau_tet.
    Edge edge_of(int tet, int a, int b) const { return tet_edges_[tet - 1][local_edge_index(a, b)]; }
    const std::array<Edge, 6>& edges_of(int tet) const { return tet_edges_[tet - 1]; }

    std::vector<Edge> edge_classes() const {
        std::vector<Edge> out;
        for (int r = 0; r < num_edges(); ++r) out.push_back(Edge::from_row(r, p()));
        return out;
    }

    const std::vector<FaceGluing>& gluings() const { return gluings_; }

    /// Vertex class (0 for {v+, v-}, 1 for the equatorial vertices) of a local vertex.
    static int vertex_class(int local) { return local <= Bottom ? 0 : 1; }

private:
    LensParams params_;
    std::vector<std::array<Edge, 6>> tet_edges_;
    std::vector<FaceGluing> gluings_;
};

inline LensTriangulation build_triangulation(LensParams params) { return LensTriangulation(params); }

inline const std::vector<FaceGluing>& face_gluings(const LensTriangulation& tri) { return tri.gluings(); }

/// Sense of quad type X_{i,j} with respect to an edge class. Contributions of the
/// general (p,q) formulas are summed over index coincidences modulo p, which yields
/// the doubled entries of T(p,1) and T(2,1).
inline int sense(const LensTriangulation& tri, Edge edge, QuadType quad) {
    const int p = tri.p();
    const int q = tri.q();
    const int i = quad.tet;
    if (i < 1 || i > p) throw Error(ErrorKind::InvalidParams, "tetrahedron index must lie in 1..p");
    struct Term {
        Edge edge;
        int value;
    };
    std::array<Term, 4> terms{};
    switch (quad.type) {
    case 1:
        terms = {{{Edge::spoke(wrap(i - q, p)), +1},
                  {Edge::spoke(wrap(i - q + 1, p)), -1},
                  {Edge::spoke(i), -1},
                  {Edge::spoke(wrap(i + 1, p)), +1}}};
        break;
    case 2:
        terms = {{{Edge::spoke(wrap(i - q + 1, p)), +1},
                  {Edge::spoke(i), +1},
                  {Edge::horizontal(), -1},
                  {Edge::vertical(), -1}}};
        break;
    case 3:
        terms = {{{Edge::spoke(wrap(i - q, p)), -1},
                  {Edge::spoke(wrap(i + 1, p)), -1},
                  {Edge::horizontal(), +1},
                  {Edge::vertical(), +1}}};
        break;
    default:
        throw Error(ErrorKind::InvalidParams, "quad type must be 1, 2 or 3");
    }
    int total = 0;
    for (const auto& t : terms)
        if (t.edge == edge) total += t.value;
    return total;
}

} // namespace qlens
