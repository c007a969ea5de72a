#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qlens/error.hpp"
#include "qlens/rational.hpp"

namespace qlens {

using IntVector = std::vector<std::int64_t>;
using RatVector = std::vector<Rational>;

/// Dense row-major matrix. Small by construction (at most a few hundred rows).
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
    return out;
}

inline IntVector multiply(const IntMatrix& m, std::span<const std::int64_t> v) {
    if (v.size() != m.cols())
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix has " + std::to_string(m.cols()) + " columns, vector has " +
                        std::to_string(v.size()) + " entries");
    IntVector out(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::int64_t acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0 && v[c] != 0) acc = checked::add(acc, checked::mul(m(r, c), v[c]));
        out[r] = acc;
    }
    return out;
}

inline RatVector multiply(const IntMatrix& m, std::span<const Rational> v) {
    if (v.size() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix/vector size");
    RatVector out(m.rows(), Rational(0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0 && !v[c].is_zero()) out[r] += Rational(m(r, c)) * v[c];
    return out;
}

/// Reduced row echelon form in place; returns the pivot column of each pivot row.
inline std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < m.cols() && prow < m.rows(); ++c) {
        std::size_t sel = prow;
        while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != prow)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(prow, k));
        const Rational inv = Rational(1) / m(prow, c);
        for (std::size_t k = c; k < m.cols(); ++k) m(prow, k) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == prow || m(r, c).is_zero()) continue;
            const Rational f = m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k)
                if (!m(prow, k).is_zero()) m(r, k) -= f * m(prow, k);
        }
        pivots.push_back(c);
        ++prow;
    }
    return pivots;
}

inline std::size_t rank(const IntMatrix& m) {
    RatMatrix work = to_rational(m);
    return rref(work).size();
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

/// Basis of the rational null space {x : m x = 0}, one vector per free column.
inline std::vector<RatVector> kernel_basis(const IntMatrix& m) {
    RatMatrix work = to_rational(m);
    const auto pivots = rref(work);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVector v(m.cols(), Rational(0));
        v[free] = Rational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Columns restricted to `cols`, in the given order.
inline IntMatrix select_columns(const IntMatrix& m, std::span<const std::size_t> cols) {
    IntMatrix out(m.rows(), cols.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t k = 0; k < cols.size(); ++k) out(r, k) = m(r, cols[k]);
    return out;
}

/// Unique solution of an overdetermined but consistent system m x = rhs.
/// Throws SingularSystem when the solution is not unique and NotASolution when inconsistent.
inline RatVector solve_unique(const RatMatrix& m, const RatVector& rhs) {
    assert(rhs.size() == m.rows());
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = rhs[r];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols())
        throw Error(ErrorKind::NotASolution, "linear system is inconsistent");
    if (pivots.size() != m.cols())
        throw Error(ErrorKind::SingularSystem, "linear system has a non-trivial null space");
    RatVector x(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

} // namespace qlens
