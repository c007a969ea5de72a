#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "qlens/error.hpp"
#include "qlens/linalg.hpp"
#include "qlens/qsystem.hpp"
#include "qlens/triangulation.hpp"

namespace qlens {

/// Resource limits for the enumeration routines. Exceeding any of them raises
/// BudgetExceeded; partial results are never returned.
struct Budget {
    double max_seconds = 60.0;
    std::size_t max_frontier = 10'000'000;
    unsigned threads = 1;
};

/// Non-negative integer solutions of A x = 0.
class SolutionCone {
public:
    explicit SolutionCone(IntMatrix a) : a_(std::move(a)), kernel_(kernel_basis(a_)) {}

    const IntMatrix& matrix() const { return a_; }
    std::size_t num_vars() const { return a_.cols(); }
    /// Exact rational basis of ker A.
    const std::vector<RatVector>& kernel() const { return kernel_; }

    bool contains(std::span<const std::int64_t> x) const {
        for (auto r : multiply(a_, x))
            if (r != 0) return false;
        return true;
    }

private:
    IntMatrix a_;
    std::vector<RatVector> kernel_;
};

inline SolutionCone q_cone(const LensTriangulation& tri) { return SolutionCone(q_matrix(tri)); }

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline void check_time(const Stopwatch& sw, const Budget& budget, const char* what) {
    if (sw.seconds() > budget.max_seconds)
        throw Error(ErrorKind::BudgetExceeded,
                    std::string(what) + " exceeded the time budget of " + std::to_string(budget.max_seconds) + " s");
}

inline std::uint64_t support_mask(std::span<const std::int32_t> x) {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < x.size() && k < 64; ++k)
        if (x[k] != 0) m |= std::uint64_t{1} << k;
    return m;
}

/// Minimal solutions found so far, with support masks for a quick subset test.
struct MinimalSet {
    std::size_t n = 0;
    std::vector<std::int32_t> flat;
    std::vector<std::uint64_t> masks;

    std::size_t size() const { return masks.size(); }

    bool dominated_by_some(std::span<const std::int32_t> x, std::uint64_t xmask) const {
        for (std::size_t s = 0; s < masks.size(); ++s) {
            if ((masks[s] & ~xmask) != 0) continue;
            const std::int32_t* sol = flat.data() + s * n;
            bool leq = true;
            for (std::size_t k = 0; k < n && leq; ++k) leq = sol[k] <= x[k];
            if (leq) return true;
        }
        return false;
    }
    void add(std::span<const std::int32_t> x) {
        flat.insert(flat.end(), x.begin(), x.end());
        masks.push_back(support_mask(x));
    }
};

} // namespace detail

/// Hilbert basis of {x >= 0 integral : A x = 0}, in graded-lexicographic order, by the
/// Contejean-Devie completion run breadth-first by total degree.
/// A frontier vector x with residual r = A x is extended by e_j only when <r, A e_j> < 0;
/// vectors dominating an already found minimal solution are discarded. Each degree level is
/// deduplicated and sorted, so the output does not depend on the number of workers.
inline std::vector<IntVector> hilbert_basis_breadth_first(const SolutionCone& cone, const Budget& budget = {}) {
    const IntMatrix& a = cone.matrix();
    const std::size_t n = a.cols();
    const std::size_t m = a.rows();
    if (n == 0) return {};
    if (n > 64) throw Error(ErrorKind::DimensionMismatch, "hilbert_basis supports at most 64 variables");

    // column-major copy of A
    std::vector<std::int64_t> col(n * m);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < m; ++r) col[j * m + r] = a(r, j);

    detail::Stopwatch sw;
    detail::MinimalSet minimal;
    minimal.n = n;
    const std::size_t stride = n + m; // x entries followed by residual entries
    std::vector<std::int32_t> frontier;

    auto to_i32 = [](std::int64_t v) {
        if (v > std::numeric_limits<std::int32_t>::max() || v < std::numeric_limits<std::int32_t>::min())
            throw Error(ErrorKind::Overflow, "hilbert_basis entry exceeds 32 bits");
        return static_cast<std::int32_t>(v);
    };

    // Degree 1: unit vectors; zero columns are solutions at once.
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::int32_t> node(stride, 0);
        node[j] = 1;
        bool zero = true;
        for (std::size_t r = 0; r < m; ++r) {
            node[n + r] = to_i32(col[j * m + r]);
            zero = zero && node[n + r] == 0;
        }
        if (zero) minimal.add(std::span(node).first(n));
        else frontier.insert(frontier.end(), node.begin(), node.end());
    }

    const unsigned workers = std::max(1u, budget.threads);

    while (!frontier.empty()) {
        detail::check_time(sw, budget, "hilbert_basis");
        const std::size_t count = frontier.size() / stride;
        if (count > budget.max_frontier)
            throw Error(ErrorKind::BudgetExceeded,
                        "hilbert_basis frontier of " + std::to_string(count) + " states exceeds the cap of " +
                            std::to_string(budget.max_frontier));

        // Expand one degree level; each worker handles a contiguous slice.
        std::vector<std::vector<std::int32_t>> children(workers);
        auto expand = [&](unsigned w) {
            const std::size_t lo = count * w / workers;
            const std::size_t hi = count * (w + 1) / workers;
            std::vector<std::int32_t> child(stride);
            auto& out = children[w];
            for (std::size_t idx = lo; idx < hi; ++idx) {
                const std::int32_t* node = frontier.data() + idx * stride;
                const std::int32_t* res = node + n;
                const std::uint64_t mask = detail::support_mask(std::span(node, n));
                for (std::size_t j = 0; j < n; ++j) {
                    std::int64_t dot = 0;
                    for (std::size_t r = 0; r < m; ++r) dot += std::int64_t{res[r]} * col[j * m + r];
                    if (dot >= 0) continue;
                    std::copy(node, node + stride, child.begin());
                    child[j] += 1;
                    for (std::size_t r = 0; r < m; ++r)
                        child[n + r] = to_i32(std::int64_t{child[n + r]} + col[j * m + r]);
                    const std::uint64_t cmask = mask | (std::uint64_t{1} << j);
                    if (minimal.dominated_by_some(std::span(child).first(n), cmask)) continue;
                    out.insert(out.end(), child.begin(), child.end());
                }
            }
        };
        if (workers == 1) {
            expand(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(expand, w);
        }

        std::vector<std::int32_t> all;
        for (auto& c : children) all.insert(all.end(), c.begin(), c.end());
        children.clear();
        const std::size_t total = all.size() / stride;
        std::vector<std::size_t> order(total);
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto less = [&](std::size_t u, std::size_t v) {
            return std::lexicographical_compare(all.begin() + u * stride, all.begin() + u * stride + n,
                                                all.begin() + v * stride, all.begin() + v * stride + n);
        };
        auto same = [&](std::size_t u, std::size_t v) {
            return std::equal(all.begin() + u * stride, all.begin() + u * stride + n, all.begin() + v * stride);
        };
        std::sort(order.begin(), order.end(), less);
        order.erase(std::unique(order.begin(), order.end(), same), order.end());

        std::vector<std::int32_t> next;
        std::vector<std::size_t> solutions;
        for (auto idx : order) {
            const std::int32_t* node = all.data() + idx * stride;
            const bool is_solution = std::all_of(node + n, node + stride, [](std::int32_t r) { return r == 0; });
            if (is_solution) solutions.push_back(idx);
            else next.insert(next.end(), node, node + stride);
        }
        for (auto idx : solutions) minimal.add(std::span(all.data() + idx * stride, n));
        frontier = std::move(next);
    }

    std::vector<IntVector> out;
    out.reserve(minimal.size());
    for (std::size_t s = 0; s < minimal.size(); ++s)
        out.emplace_back(minimal.flat.begin() + s * n, minimal.flat.begin() + (s + 1) * n);
    std::sort(out.begin(), out.end(),
              [](const IntVector& u, const IntVector& v) { return graded_lex_less(std::span(u), std::span(v)); });
    return out;
}

namespace detail {

/// Vectors of one sign class during a completion step, indexed by total degree.
struct SignPool {
    std::size_t n = 0;
    std::vector<std::int32_t> flat;
    std::vector<std::uint64_t> masks;
    std::vector<std::int64_t> values;
    std::vector<std::vector<std::size_t>> by_degree;

    std::size_t size() const { return masks.size(); }
    const std::int32_t* at(std::size_t k) const { return flat.data() + k * n; }
    std::size_t max_degree() const { return by_degree.empty() ? 0 : by_degree.size() - 1; }

    void add(std::span<const std::int32_t> x, std::int64_t value, std::size_t degree) {
        if (by_degree.size() <= degree) by_degree.resize(degree + 1);
        by_degree[degree].push_back(size());
        flat.insert(flat.end(), x.begin(), x.end());
        masks.push_back(support_mask(x));
        values.push_back(value);
    }

    /// Some y in the pool with y <= z and |value(y)| <= |value(z)|.
    bool reduces(const std::int32_t* z, std::uint64_t zmask, std::int64_t zvalue) const {
        const std::int64_t bound = zvalue < 0 ? -zvalue : zvalue;
        for (std::size_t k = 0; k < size(); ++k) {
            if ((masks[k] & ~zmask) != 0) continue;
            const std::int64_t v = values[k] < 0 ? -values[k] : values[k];
            if (v > bound) continue;
            const std::int32_t* y = at(k);
            bool leq = true;
            for (std::size_t j = 0; j < n && leq; ++j) leq = y[j] <= z[j];
            if (leq) return true;
        }
        return false;
    }
};

/// Rows of A forming a basis of its row space, in their original order.
inline std::vector<std::size_t> independent_rows(const IntMatrix& a) {
    std::vector<std::size_t> chosen;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        IntMatrix trial(chosen.size() + 1, a.cols());
        for (std::size_t k = 0; k < chosen.size(); ++k)
            for (std::size_t c = 0; c < a.cols(); ++c) trial(k, c) = a(chosen[k], c);
        for (std::size_t c = 0; c < a.cols(); ++c) trial(chosen.size(), c) = a(r, c);
        if (rank(trial) == chosen.size() + 1) chosen.push_back(r);
    }
    return chosen;
}

} // namespace detail

/// Hilbert basis of {x >= 0 integral : A x = 0}, in graded-lexicographic order.
///
/// Starts from the unit vectors (the Hilbert basis of the orthant) and cuts by one
/// equation lambda = 0 at a time. For each cut the current basis is split by the sign of
/// lambda and closed under sums of a positive and a negative element, degree by degree;
/// a sum is kept only if no element of its own sign class or of the zero class lies below
/// it with |lambda| not larger. The zero class is then the Hilbert basis of the cut cone.
inline std::vector<IntVector> hilbert_basis(const SolutionCone& cone, const Budget& budget = {}) {
    const IntMatrix& a = cone.matrix();
    const std::size_t n = a.cols();
    if (n == 0) return {};
    detail::Stopwatch sw;
    const unsigned workers = std::max(1u, budget.threads);

    auto to_i32 = [](std::int64_t v) {
        if (v > std::numeric_limits<std::int32_t>::max())
            throw Error(ErrorKind::Overflow, "hilbert_basis entry exceeds 32 bits");
        return static_cast<std::int32_t>(v);
    };

    std::vector<std::vector<std::int32_t>> current;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::int32_t> e(n, 0);
        e[j] = 1;
        current.push_back(std::move(e));
    }

    for (std::size_t r : detail::independent_rows(a)) {
        const auto lambda = a.row(r);
        auto value_of = [&](const std::int32_t* x) {
            std::int64_t v = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (x[j] != 0 && lambda[j] != 0) v = checked::add(v, checked::mul(lambda[j], x[j]));
            return v;
        };

        detail::SignPool pos, neg, zero;
        pos.n = neg.n = zero.n = n;
        for (const auto& x : current) {
            const std::int64_t v = value_of(x.data());
            const auto deg = static_cast<std::size_t>(std::accumulate(x.begin(), x.end(), std::int64_t{0}));
            (v > 0 ? pos : v < 0 ? neg : zero).add(x, v, deg);
        }

        for (std::size_t d = 2; d <= pos.max_degree() + neg.max_degree(); ++d) {
            detail::check_time(sw, budget, "hilbert_basis");
            const std::size_t held = pos.size() + neg.size() + zero.size();
            if (held > budget.max_frontier)
                throw Error(ErrorKind::BudgetExceeded,
                            "hilbert_basis holds " + std::to_string(held) + " vectors, above the cap of " +
                                std::to_string(budget.max_frontier));

            // positive elements that have a negative partner of complementary degree
            std::vector<std::pair<std::size_t, std::size_t>> left; // (pos index, neg degree)
            for (std::size_t dx = 1; dx < d && dx <= pos.max_degree(); ++dx) {
                const std::size_t dy = d - dx;
                if (dy > neg.max_degree() || neg.by_degree[dy].empty()) continue;
                for (auto i : pos.by_degree[dx]) left.emplace_back(i, dy);
            }
            if (left.empty()) continue;

            struct Found {
                std::vector<std::int32_t> flat;
                std::vector<std::int64_t> values;
            };
            std::vector<Found> found(workers);
            auto combine = [&](unsigned w) {
                const std::size_t lo = left.size() * w / workers;
                const std::size_t hi = left.size() * (w + 1) / workers;
                std::vector<std::int32_t> z(n);
                for (std::size_t k = lo; k < hi; ++k) {
                    const auto [i, dy] = left[k];
                    const std::int32_t* x = pos.at(i);
                    for (auto jn : neg.by_degree[dy]) {
                        const std::int32_t* y = neg.at(jn);
                        for (std::size_t c = 0; c < n; ++c) z[c] = to_i32(std::int64_t{x[c]} + y[c]);
                        const std::int64_t v = pos.values[i] + neg.values[jn];
                        const std::uint64_t mask = pos.masks[i] | neg.masks[jn];
                        if (zero.reduces(z.data(), mask, v)) continue;
                        if (v > 0 && pos.reduces(z.data(), mask, v)) continue;
                        if (v < 0 && neg.reduces(z.data(), mask, v)) continue;
                        found[w].flat.insert(found[w].flat.end(), z.begin(), z.end());
                        found[w].values.push_back(v);
                    }
                }
            };
            if (workers == 1) {
                combine(0);
            } else {
                std::vector<std::jthread> pool;
                for (unsigned w = 0; w < workers; ++w) pool.emplace_back(combine, w);
            }

            std::vector<std::pair<std::vector<std::int32_t>, std::int64_t>> fresh;
            for (auto& f : found)
                for (std::size_t k = 0; k < f.values.size(); ++k)
                    fresh.emplace_back(std::vector<std::int32_t>(f.flat.begin() + k * n, f.flat.begin() + (k + 1) * n),
                                       f.values[k]);
            std::sort(fresh.begin(), fresh.end());
            fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
            for (auto& [z, v] : fresh) (v > 0 ? pos : v < 0 ? neg : zero).add(z, v, d);
        }

        current.clear();
        for (std::size_t k = 0; k < zero.size(); ++k) current.emplace_back(zero.at(k), zero.at(k) + n);
    }

    std::vector<IntVector> out;
    out.reserve(current.size());
    for (const auto& x : current) out.emplace_back(x.begin(), x.end());
    std::sort(out.begin(), out.end(),
              [](const IntVector& u, const IntVector& v) { return graded_lex_less(std::span(u), std::span(v)); });
    return out;
}

namespace detail {

inline void require_nonneg_solution(const SolutionCone& cone, std::span<const std::int64_t> v) {
    if (v.size() != cone.num_vars())
        throw Error(ErrorKind::DimensionMismatch, "vector length does not match the cone");
    bool nonzero = false;
    for (auto x : v) {
        if (x < 0) throw Error(ErrorKind::NegativeEntry, "vector has a negative entry");
        nonzero = nonzero || x != 0;
    }
    if (!nonzero) throw Error(ErrorKind::EmptyVector, "zero vector");
    if (!cone.contains(v)) throw Error(ErrorKind::NotASolution, "vector is not a solution of the system");
}

} // namespace detail

/// Some integral solution w with 0 < w < v, searched over the box prod [0, v_k] restricted
/// to the support of v, pruned by interval bounds on every equation.
inline std::optional<IntVector> smaller_solution(const SolutionCone& cone, std::span<const std::int64_t> v,
                                                 const Budget& budget = {}) {
    detail::require_nonneg_solution(cone, v);
    const IntMatrix& a = cone.matrix();
    const std::size_t m = a.rows();
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] > 0) support.push_back(k);
    const std::size_t s = support.size();

    // suffix bounds: reach_lo/hi[k][r] = extreme contribution of support[k..] to row r
    std::vector<std::int64_t> reach_lo((s + 1) * m, 0), reach_hi((s + 1) * m, 0);
    for (std::size_t k = s; k-- > 0;) {
        for (std::size_t r = 0; r < m; ++r) {
            const std::int64_t c = checked::mul(a(r, support[k]), v[support[k]]);
            reach_lo[k * m + r] = reach_lo[(k + 1) * m + r] + std::min<std::int64_t>(0, c);
            reach_hi[k * m + r] = reach_hi[(k + 1) * m + r] + std::max<std::int64_t>(0, c);
        }
    }

    detail::Stopwatch sw;
    std::vector<std::int64_t> residual(m, 0);
    IntVector w(v.size(), 0);
    std::uint64_t visited = 0;
    std::optional<IntVector> found;

    auto dfs = [&](auto&& self, std::size_t k, std::int64_t weight) -> bool {
        if ((++visited & 0xFFFF) == 0) detail::check_time(sw, budget, "fundamentality search");
        for (std::size_t r = 0; r < m; ++r) {
            const std::int64_t lo = residual[r] + reach_lo[k * m + r];
            const std::int64_t hi = residual[r] + reach_hi[k * m + r];
            if (lo > 0 || hi < 0) return false;
        }
        if (k == s) {
            const std::int64_t total = std::accumulate(v.begin(), v.end(), std::int64_t{0});
            if (weight == 0 || weight == total) return false;
            found = w;
            return true;
        }
        const std::size_t col = support[k];
        for (std::int64_t x = 0; x <= v[col]; ++x) {
            w[col] = x;
            for (std::size_t r = 0; r < m; ++r) residual[r] += a(r, col) * x;
            const bool hit = self(self, k + 1, weight + x);
            for (std::size_t r = 0; r < m; ++r) residual[r] -= a(r, col) * x;
            if (hit) return true;
        }
        w[col] = 0;
        return false;
    };
    dfs(dfs, 0, 0);
    return found;
}

/// True iff no integral solution w satisfies 0 < w < v.
inline bool is_fundamental(const SolutionCone& cone, std::span<const std::int64_t> v, const Budget& budget = {}) {
    return !smaller_solution(cone, v, budget).has_value();
}

inline bool is_fundamental(const SolutionCone& cone, const QVector& v, const Budget& budget = {}) {
    return is_fundamental(cone, std::span(v.entries()), budget);
}

/// Extreme-ray test: the kernel of A restricted to the support of v is one-dimensional.
inline bool is_vertex(const SolutionCone& cone, std::span<const std::int64_t> v) {
    detail::require_nonneg_solution(cone, v);
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] > 0) support.push_back(k);
    const IntMatrix restricted = select_columns(cone.matrix(), support);
    return support.size() - rank(restricted) == 1;
}

inline bool is_vertex(const SolutionCone& cone, const QVector& v) { return is_vertex(cone, std::span(v.entries())); }

/// Box of basis coefficients for the brute-force oracle: a_i integral in [a_min, a_max],
/// b_i on the grid b_min, b_min + 1/2, ..., b_max (bounds given in halves).
struct CoefficientRanges {
    int a_min = 0;
    int a_max = 4;
    int b_min_halves = -4;
    int b_max_halves = 4;

    bool empty() const { return a_min > a_max || b_min_halves > b_max_halves; }
};

/// Minimal elements (under <=) of a set of non-negative vectors, graded-lex ordered.
inline std::vector<QVector> minimal_elements(std::vector<QVector> vs) {
    std::sort(vs.begin(), vs.end(), [](const QVector& a, const QVector& b) { return graded_lex_less(a, b); });
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<QVector> out;
    for (auto& v : vs) {
        const bool dominated =
            std::any_of(out.begin(), out.end(), [&](const QVector& w) { return w.leq(v); });
        if (!dominated) out.push_back(std::move(v));
    }
    return out;
}

/// Independent oracle: every non-negative integral non-zero vector sum a_i s_i + sum b_i t_i
/// with coefficients in the box, reduced to its <=-minimal elements.
inline std::vector<QVector> brute_force_minimal_solutions(const LensTriangulation& tri,
                                                          const CoefficientRanges& ranges,
                                                          const Budget& budget = {}) {
    if (ranges.empty()) return {};
    const int p = tri.p();
    const int q = tri.q();
    const int na = ranges.a_max - ranges.a_min + 1;
    const int nb = ranges.b_max_halves - ranges.b_min_halves + 1;
    double combos = 1;
    for (int i = 0; i < p; ++i) combos *= static_cast<double>(na) * nb;
    if (combos > static_cast<double>(budget.max_frontier) * 100)
        throw Error(ErrorKind::BudgetExceeded, "coefficient box too large for the brute-force oracle");

    std::vector<int> a(p, ranges.a_min);
    std::vector<int> b2(p, ranges.b_min_halves); // doubled b values
    std::vector<QVector> found;
    detail::Stopwatch sw;
    std::uint64_t tick = 0;

    // odometer over (a, b)
    while (true) {
        if ((++tick & 0xFFFFF) == 0) detail::check_time(sw, budget, "brute-force oracle");
        bool ok = true;
        bool nonzero = false;
        QVector v = QVector::zeros(p);
        for (int i = 1; i <= p && ok; ++i) {
            const int a2 = 2 * a[i - 1];
            const int x1 = a2;
            const int x2 = a2 + b2[wrap(i + 1, p) - 1] + b2[wrap(i - q, p) - 1];
            const int x3 = a2 + b2[i - 1] + b2[wrap(i - q + 1, p) - 1];
            for (int x : {x1, x2, x3}) ok = ok && x >= 0 && x % 2 == 0;
            if (!ok) break;
            v.at(i, 1) = x1 / 2;
            v.at(i, 2) = x2 / 2;
            v.at(i, 3) = x3 / 2;
            nonzero = nonzero || x1 || x2 || x3;
        }
        if (ok && nonzero) found.push_back(std::move(v));

        int k = 0;
        for (; k < 2 * p; ++k) {
            if (k < p) {
                if (++a[k] <= ranges.a_max) break;
                a[k] = ranges.a_min;
            } else {
                if (++b2[k - p] <= ranges.b_max_halves) break;
                b2[k - p] = ranges.b_min_halves;
            }
        }
        if (k == 2 * p) break;
    }
    return minimal_elements(std::move(found));
}

} // namespace qlens
