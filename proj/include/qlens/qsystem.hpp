#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qlens/error.hpp"
#include "qlens/linalg.hpp"
#include "qlens/rational.hpp"
#include "qlens/triangulation.hpp"

namespace qlens {

/// Quadrilateral coordinate: 3p integers, block i (1-based) holds (x_i1, x_i2, x_i3).
class QVector {
public:
    QVector() = default;
    explicit QVector(IntVector entries) : entries_(std::move(entries)) {
        if (entries_.size() % 3 != 0)
            throw Error(ErrorKind::DimensionMismatch,
                        "Q-coordinate length must be a multiple of 3 (got " +
                            std::to_string(entries_.size()) + ")");
    }
    static QVector zeros(int p) { return QVector(IntVector(3 * static_cast<std::size_t>(p), 0)); }

    /// Concatenation of blocks, each given as (x1, x2, x3).
    static QVector from_blocks(std::span<const std::array<std::int64_t, 3>> blocks) {
        IntVector e;
        for (const auto& b : blocks) e.insert(e.end(), b.begin(), b.end());
        return QVector(std::move(e));
    }

    int p() const { return static_cast<int>(entries_.size() / 3); }
    std::size_t size() const { return entries_.size(); }
    const IntVector& entries() const { return entries_; }

    std::int64_t operator[](std::size_t k) const { return entries_[k]; }
    std::int64_t& operator[](std::size_t k) { return entries_[k]; }

    std::int64_t at(int block, int type) const { return entries_[index(block, type)]; }
    std::int64_t& at(int block, int type) { return entries_[index(block, type)]; }
    std::array<std::int64_t, 3> block(int i) const { return {at(i, 1), at(i, 2), at(i, 3)}; }

    static std::size_t index(int block, int type) {
        return 3 * static_cast<std::size_t>(block - 1) + static_cast<std::size_t>(type - 1);
    }

    std::int64_t degree() const {
        std::int64_t d = 0;
        for (auto x : entries_) d = checked::add(d, x);
        return d;
    }
    bool is_zero() const {
        for (auto x : entries_)
            if (x != 0) return false;
        return true;
    }
    bool is_nonnegative() const {
        for (auto x : entries_)
            if (x < 0) return false;
        return true;
    }

    QVector& operator+=(const QVector& o) {
        check_same(o);
        for (std::size_t k = 0; k < size(); ++k) entries_[k] = checked::add(entries_[k], o.entries_[k]);
        return *this;
    }
    QVector& operator-=(const QVector& o) {
        check_same(o);
        for (std::size_t k = 0; k < size(); ++k) entries_[k] = checked::sub(entries_[k], o.entries_[k]);
        return *this;
    }
    friend QVector operator+(QVector a, const QVector& b) { return a += b; }
    friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
    friend QVector operator*(std::int64_t k, QVector v) {
        for (auto& x : v.entries_) x = checked::mul(k, x);
        return v;
    }

    friend bool operator==(const QVector&, const QVector&) = default;

    /// Componentwise partial order.
    bool leq(const QVector& o) const {
        check_same(o);
        for (std::size_t k = 0; k < size(); ++k)
            if (entries_[k] > o.entries_[k]) return false;
        return true;
    }

    /// Blocks separated by '|', entries by ','.
    std::string str() const {
        std::string s;
        for (std::size_t k = 0; k < size(); ++k) {
            if (k > 0) s += (k % 3 == 0) ? "|" : ",";
            s += std::to_string(entries_[k]);
        }
        return s;
    }
    friend std::ostream& operator<<(std::ostream& os, const QVector& v) { return os << v.str(); }

private:
    void check_same(const QVector& o) const {
        if (o.size() != size()) throw Error(ErrorKind::DimensionMismatch, "Q-coordinate lengths differ");
    }

    IntVector entries_;
};

/// Graded lexicographic order: total degree first, then lexicographic on entries.
inline bool graded_lex_less(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
    const auto da = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::int64_t{0});
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline bool graded_lex_less(const QVector& a, const QVector& b) {
    return graded_lex_less(std::span(a.entries()), std::span(b.entries()));
}

/// Shift blocks by i -> i + k (rotation about E_v by 2*pi*k/p).
inline QVector rotate(const QVector& v, int k) {
    const int p = v.p();
    QVector out = QVector::zeros(p);
    for (int i = 1; i <= p; ++i)
        for (int t = 1; t <= 3; ++t) out.at(wrap(i + k, p), t) = v.at(i, t);
    return out;
}

/// (p+2) x 3p Q-matching matrix; rows e_1..e_p, E_h, E_v; columns block-major.
inline IntMatrix q_matrix(const LensTriangulation& tri) {
    const int p = tri.p();
    IntMatrix m(static_cast<std::size_t>(p + 2), static_cast<std::size_t>(3 * p));
    for (int r = 0; r < p + 2; ++r) {
        const Edge e = Edge::from_row(r, p);
        for (int i = 1; i <= p; ++i)
            for (int t = 1; t <= 3; ++t) m(r, QVector::index(i, t)) = sense(tri, e, {i, t});
    }
    return m;
}

inline bool is_q_solution(const IntMatrix& m, const QVector& v) {
    const auto r = multiply(m, std::span(v.entries()));
    for (auto x : r)
        if (x != 0) return false;
    return true;
}

/// Spanning family {s_i} and {t_i} of the solution space.
struct QBasis {
    std::vector<QVector> s;
    std::vector<QVector> t;
};

/// s_i is (1,1,1) on block i. t_i collects (0,0,1) on blocks i and i+q-1 and (0,1,0) on
/// blocks i-1 and i+q; coinciding indices add up.
inline QBasis basis_vectors(const LensTriangulation& tri) {
    const int p = tri.p();
    const int q = tri.q();
    QBasis basis;
    for (int i = 1; i <= p; ++i) {
        QVector s = QVector::zeros(p);
        s.at(i, 1) = s.at(i, 2) = s.at(i, 3) = 1;
        basis.s.push_back(std::move(s));

        QVector t = QVector::zeros(p);
        t.at(i, 3) += 1;
        t.at(wrap(i + q - 1, p), 3) += 1;
        t.at(wrap(i - 1, p), 2) += 1;
        t.at(wrap(i + q, p), 2) += 1;
        basis.t.push_back(std::move(t));
    }
    return basis;
}

/// Coordinates (a, b) of a solution in the basis {s_i, t_i}.
struct BasisCoefficients {
    RatVector a;
    RatVector b;

    bool a_all_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }
    friend bool operator==(const BasisCoefficients&, const BasisCoefficients&) = default;
};

/// The vector sum_i a_i s_i + sum_i b_i t_i; block i equals
/// (a_i, a_i + b_{i+1} + b_{i-q}, a_i + b_i + b_{i-q+1}).
inline RatVector expand(const LensTriangulation& tri, const BasisCoefficients& c) {
    const int p = tri.p();
    const int q = tri.q();
    RatVector v(3 * static_cast<std::size_t>(p), Rational(0));
    for (int i = 1; i <= p; ++i) {
        const Rational& ai = c.a[i - 1];
        v[QVector::index(i, 1)] = ai;
        v[QVector::index(i, 2)] = ai + c.b[wrap(i + 1, p) - 1] + c.b[wrap(i - q, p) - 1];
        v[QVector::index(i, 3)] = ai + c.b[i - 1] + c.b[wrap(i - q + 1, p) - 1];
    }
    return v;
}

inline BasisCoefficients decompose(const LensTriangulation& tri, const RatVector& v) {
    const int p = tri.p();
    const int q = tri.q();
    if (v.size() != 3 * static_cast<std::size_t>(p))
        throw Error(ErrorKind::DimensionMismatch, "vector length must be 3p = " + std::to_string(3 * p));
    for (const auto& r : multiply(q_matrix(tri), std::span(v)))
        if (!r.is_zero()) throw Error(ErrorKind::NotASolution, "vector violates the Q-matching equations");

    BasisCoefficients c;
    c.a.resize(p);
    for (int i = 1; i <= p; ++i) c.a[i - 1] = v[QVector::index(i, 1)];

    // Remaining entries give a cyclic system in b with 2p equations.
    RatMatrix sys(2 * static_cast<std::size_t>(p), static_cast<std::size_t>(p), Rational(0));
    RatVector rhs(2 * static_cast<std::size_t>(p));
    for (int i = 1; i <= p; ++i) {
        const std::size_t r2 = 2 * static_cast<std::size_t>(i - 1);
        sys(r2, wrap(i + 1, p) - 1) += Rational(1);
        sys(r2, wrap(i - q, p) - 1) += Rational(1);
        rhs[r2] = v[QVector::index(i, 2)] - c.a[i - 1];
        sys(r2 + 1, i - 1) += Rational(1);
        sys(r2 + 1, wrap(i - q + 1, p) - 1) += Rational(1);
        rhs[r2 + 1] = v[QVector::index(i, 3)] - c.a[i - 1];
    }
    try {
        c.b = solve_unique(sys, rhs);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SingularSystem)
            throw Error(ErrorKind::SingularSystem,
                        "basis coefficient system is singular for (p,q)=(" + std::to_string(p) + "," +
                            std::to_string(q) + ")");
        throw;
    }
    return c;
}

inline BasisCoefficients decompose(const LensTriangulation& tri, const QVector& v) {
    RatVector r;
    r.reserve(v.size());
    for (auto x : v.entries()) r.emplace_back(x);
    return decompose(tri, r);
}

/// At most one non-zero entry per block.
inline bool square_condition(const QVector& v) {
    for (int i = 1; i <= v.p(); ++i) {
        int nonzero = 0;
        for (int t = 1; t <= 3; ++t) {
            const auto x = v.at(i, t);
            if (x < 0) throw Error(ErrorKind::NegativeEntry, "square condition needs a non-negative vector");
            nonzero += x != 0;
        }
        if (nonzero > 1) return false;
    }
    return true;
}

/// Where a set of coefficients lives: exactly {0}, inside Z, or inside Z + 1/2.
enum class CoefficientClass { Zero, Integer, HalfInteger };

inline std::string_view to_string(CoefficientClass c) {
    switch (c) {
    case CoefficientClass::Zero: return "zero";
    case CoefficientClass::Integer: return "integer";
    case CoefficientClass::HalfInteger: return "half-integer";
    }
    return "?";
}

/// For odd p only `all` is filled in; for even p only `even` (b_2, b_4, ...) and `odd`
/// (b_1, b_3, ...).
struct IntegralityClass {
    bool p_even = false;
    CoefficientClass all = CoefficientClass::Zero;
    CoefficientClass even = CoefficientClass::Zero;
    CoefficientClass odd = CoefficientClass::Zero;

    friend bool operator==(const IntegralityClass&, const IntegralityClass&) = default;
};

namespace detail {

inline CoefficientClass classify_set(const std::vector<Rational>& xs, const char* label) {
    bool all_zero = true;
    bool all_int = true;
    bool all_half = true;
    for (const auto& x : xs) {
        all_zero = all_zero && x.is_zero();
        all_int = all_int && x.is_integer();
        all_half = all_half && x.is_half_odd();
    }
    if (all_zero) return CoefficientClass::Zero;
    if (all_int) return CoefficientClass::Integer;
    if (all_half) return CoefficientClass::HalfInteger;
    throw Error(ErrorKind::IntegralityViolated,
                std::string("coefficients ") + label + " are neither all in Z nor all in Z+1/2");
}

} // namespace detail

inline IntegralityClass integrality_class(const BasisCoefficients& c, int p) {
    for (const auto& a : c.a)
        if (!a.is_integer()) throw Error(ErrorKind::IntegralityViolated, "a coefficient " + a.str() + " not in Z");
    IntegralityClass out;
    out.p_even = p % 2 == 0;
    if (!out.p_even) {
        out.all = detail::classify_set(c.b, "B");
        return out;
    }
    std::vector<Rational> even, odd;
    for (int i = 1; i <= p; ++i) (i % 2 == 0 ? even : odd).push_back(c.b[i - 1]);
    out.even = detail::classify_set(even, "B_0");
    out.odd = detail::classify_set(odd, "B_1");
    return out;
}

} // namespace qlens
