#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlens/cone.hpp"
#include "qlens/error.hpp"
#include "qlens/fixtures_data.hpp"
#include "qlens/io.hpp"
#include "qlens/qsystem.hpp"
#include "qlens/surface.hpp"
#include "qlens/triangulation.hpp"

namespace qlens {

/// Named surfaces of T(2,1), T(p,1) and T(p,2).
namespace named {

inline QVector repeat_blocks(int p, std::array<std::int64_t, 3> odd, std::array<std::int64_t, 3> even) {
    QVector v = QVector::zeros(p);
    for (int i = 1; i <= p; ++i) {
        const auto& b = i % 2 == 1 ? odd : even;
        for (int t = 1; t <= 3; ++t) v.at(i, t) = b[t - 1];
    }
    return v;
}

inline QVector f1() { return QVector({1, 0, 0, 1, 0, 0}); }
inline QVector f2() { return QVector({0, 1, 0, 0, 0, 1}); }
inline QVector f3() { return QVector({0, 0, 1, 0, 1, 0}); }

/// Sphere around e_i in T(p,1): (0,0,2) on block i, (0,1,0) on blocks i-1 and i+1.
inline QVector t_prime(int p, int i) { return basis_vectors(LensTriangulation({p, 1})).t[i - 1]; }
/// Sphere in T(p,2): (0,0,1) on blocks i and i+1, (0,1,0) on blocks i-1 and i+2.
inline QVector t_double_prime(int p, int i) { return basis_vectors(LensTriangulation({p, 2})).t[i - 1]; }
/// Heegaard torus: (1,0,0) on every block.
inline QVector f_prime_1(int p) { return repeat_blocks(p, {1, 0, 0}, {1, 0, 0}); }
inline QVector f_double_prime_1(int p) { return f_prime_1(p); }
/// (0,1,0 | 0,0,1 | ...), half of t'_2 + t'_4 + ... + t'_p.
inline QVector f_prime_2(int p) { return repeat_blocks(p, {0, 1, 0}, {0, 0, 1}); }
/// (0,0,1 | 0,1,0 | ...), half of t'_1 + t'_3 + ... + t'_{p-1}.
inline QVector f_prime_3(int p) { return repeat_blocks(p, {0, 0, 1}, {0, 1, 0}); }
/// (0,0,1 | 0,1,0 | ...) for even p, equal to the half sum of t_1, t_3, ..., t_{p-1}.
inline QVector h(int p) { return f_prime_3(p); }

} // namespace named

struct ExpectedReport {
    std::int64_t euler = 0;
    bool orientable = true;
    std::optional<std::size_t> components;
};

struct ExpectedCatalog {
    LensParams params;
    std::vector<QVector> expected_q_fundamental; ///< graded-lex order
    std::vector<std::pair<QVector, ExpectedReport>> expected_reports;

    std::optional<ExpectedReport> report_for(const QVector& v) const {
        for (const auto& [w, r] : expected_reports)
            if (w == v) return r;
        return std::nullopt;
    }
};

/// Known Q-fundamental sets: q = 1 for every p >= 2, and q = 2 for odd p >= 5.
inline ExpectedCatalog expected_for(int p, int q) {
    const LensParams params = make_params(p, q);
    ExpectedCatalog c{params, {}, {}};
    auto add = [&](QVector v, ExpectedReport r) {
        c.expected_q_fundamental.push_back(v);
        c.expected_reports.emplace_back(std::move(v), r);
    };
    if (q == 1 && p == 2) {
        add(named::f1(), {0, true, 1});
        add(named::f2(), {1, false, 1});
        add(named::f3(), {1, false, 1});
    } else if (q == 1) {
        for (int i = 1; i <= p; ++i) add(named::t_prime(p, i), {2, true, 1});
        add(named::f_prime_1(p), {0, true, 1});
        if (p % 2 == 0) {
            add(named::f_prime_2(p), {2 - p / 2, false, 1});
            add(named::f_prime_3(p), {2 - p / 2, false, 1});
        }
    } else if (q == 2 && p % 2 == 1 && p >= 5) {
        for (int i = 1; i <= p; ++i) add(named::t_double_prime(p, i), {2, true, 1});
        add(named::f_double_prime_1(p), {0, true, 1});
    } else {
        throw Error(ErrorKind::NoExpectation,
                    "no known Q-fundamental list for (p,q)=(" + std::to_string(p) + "," + std::to_string(q) + ")");
    }
    std::sort(c.expected_q_fundamental.begin(), c.expected_q_fundamental.end(),
              [](const QVector& a, const QVector& b) { return graded_lex_less(a, b); });
    return c;
}

inline bool has_expectation(int p, int q) {
    try {
        expected_for(p, q);
        return true;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NoExpectation) return false;
        throw;
    }
}

struct QFundamentalSurface {
    QVector vector;
    SurfaceReport report;
};

/// Fundamental solutions of the Q-system in graded-lex order.
inline std::vector<QVector> fundamental_solutions(const LensTriangulation& tri, const Budget& budget = {}) {
    std::vector<QVector> out;
    for (auto& x : hilbert_basis(q_cone(tri), budget)) out.emplace_back(std::move(x));
    return out;
}

/// Hilbert basis of the Q-system restricted to the square condition, each member classified.
inline std::vector<QFundamentalSurface> enumerate_q_fundamental(int p, int q, const Budget& budget = {}) {
    const LensTriangulation tri(make_params(p, q));
    std::vector<QFundamentalSurface> out;
    for (auto& v : fundamental_solutions(tri, budget))
        if (square_condition(v)) out.push_back({v, classify(tri, v)});
    return out;
}

enum class CheckStatus { Pass, Fail, Skip };

inline std::string_view to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
    }
    return "?";
}

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

struct VerificationReport {
    std::string subject; ///< "T(p,q)" or a fixture name
    LensParams params;
    std::vector<Check> checks;

    bool passed() const {
        return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Fail; });
    }
    void add(std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)});
    }
    void skip(std::string name, std::string detail) {
        checks.push_back({std::move(name), CheckStatus::Skip, std::move(detail)});
    }
};

namespace detail {

inline bool b_within(const BasisCoefficients& c, const Rational& bound) {
    return std::all_of(c.b.begin(), c.b.end(), [&](const Rational& b) { return -bound <= b && b <= bound; });
}

/// Coefficient bounds for a Q-fundamental solution with every a_i = 0. Returns an empty
/// string when they hold, otherwise the reason.
inline std::string coefficient_bound_violation(const BasisCoefficients& c, const IntegralityClass& ic) {
    using CC = CoefficientClass;
    const Rational half(1, 2);
    if (!ic.p_even) {
        const Rational bound = ic.all == CC::HalfInteger ? half : Rational(1);
        return b_within(c, bound) ? "" : "b outside [-" + bound.str() + ", " + bound.str() + "]";
    }
    const bool even_zero = ic.even == CC::Zero;
    const bool odd_zero = ic.odd == CC::Zero;
    if (!even_zero && !odd_zero) return "neither B_0 nor B_1 is {0}";
    const CC other = even_zero ? ic.odd : ic.even;
    const Rational bound = other == CC::HalfInteger ? half : Rational(1);
    return b_within(c, bound) ? "" : "b outside [-" + bound.str() + ", " + bound.str() + "]";
}

inline std::string label(const LensParams& lp) {
    return "T(" + std::to_string(lp.p) + "," + std::to_string(lp.q) + ")";
}

} // namespace detail

/// Runs the theorem checks for one lens space on the enumerated Q-fundamental set.
inline VerificationReport verify_theorems(int p, int q, const Budget& budget = {}) {
    const LensTriangulation tri(make_params(p, q));
    VerificationReport rep{detail::label(tri.params()), tri.params(), {}};
    const auto hb = fundamental_solutions(tri, budget);
    std::vector<QFundamentalSurface> qf;
    for (const auto& v : hb)
        if (square_condition(v)) qf.push_back({v, classify(tri, v)});

    if (has_expectation(p, q)) {
        const auto cat = expected_for(p, q);
        std::vector<QVector> got;
        for (const auto& s : qf) got.push_back(s.vector);
        rep.add("expected-set", got == cat.expected_q_fundamental,
                std::to_string(got.size()) + " found, " + std::to_string(cat.expected_q_fundamental.size()) +
                    " expected");
        bool reports_ok = true;
        std::string why;
        for (const auto& s : qf) {
            const auto e = cat.report_for(s.vector);
            if (!e) continue;
            const bool ok = s.report.euler == e->euler && s.report.orientable == e->orientable &&
                            (!e->components || s.report.components.size() == *e->components);
            if (!ok && why.empty()) why = s.vector.str();
            reports_ok = reports_ok && ok;
        }
        rep.add("expected-reports", reports_ok, why);
    } else {
        rep.skip("expected-set", "no known list for this lens space");
    }

    // integrality of every fundamental solution
    {
        std::string why;
        for (const auto& v : hb) {
            try {
                integrality_class(decompose(tri, v), p);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::IntegralityViolated) throw;
                if (why.empty()) why = v.str();
            }
        }
        rep.add("integrality", why.empty(), why);
    }

    std::size_t with_zero_a = 0;
    std::string bound_fail, half_fail;
    for (const auto& s : qf) {
        const auto c = decompose(tri, s.vector);
        if (!c.a_all_zero()) continue;
        ++with_zero_a;
        const auto ic = integrality_class(c, p);
        const auto why = detail::coefficient_bound_violation(c, ic);
        if (!why.empty() && bound_fail.empty()) bound_fail = s.vector.str() + ": " + why;
        if (p % 2 == 1 && q >= 2 && ic.all == CoefficientClass::HalfInteger && half_fail.empty())
            half_fail = s.vector.str();
    }
    rep.add("coefficient-bounds", bound_fail.empty(),
            bound_fail.empty() ? std::to_string(with_zero_a) + " solutions with a = 0" : bound_fail);
    if (p % 2 == 1 && q >= 2) rep.add("half-integer-exclusion", half_fail.empty(), half_fail);
    else rep.skip("half-integer-exclusion", "needs odd p and q >= 2");

    if (q == 1 && p % 2 == 0 && p >= 4) {
        const SolutionCone cone = q_cone(tri);
        const auto f2 = named::f_prime_2(p);
        const auto f3 = named::f_prime_3(p);
        QVector even_sum = QVector::zeros(p), odd_sum = QVector::zeros(p);
        for (int i = 1; i <= p; ++i) (i % 2 == 0 ? even_sum : odd_sum) += named::t_prime(p, i);
        rep.add("non-vertex", !is_vertex(cone, f2) && !is_vertex(cone, f3) && 2 * f2 == even_sum && 2 * f3 == odd_sum,
                "2f'_2 = t'_2 + t'_4 + ... and 2f'_3 = t'_1 + t'_3 + ...");
    } else {
        rep.skip("non-vertex", "needs q = 1 and even p >= 4");
    }

    {
        std::string why;
        for (const auto& s : qf)
            for (const auto& c : s.report.components) {
                const bool odd = c.edge_weights[Edge::vertical().row(p)] % 2 != 0;
                if (odd == c.orientable && why.empty()) why = s.vector.str();
            }
        rep.add("parity", why.empty(), why);
    }
    {
        std::string why;
        for (const auto& s : qf) {
            const auto r = haken_residual(tri, s.report.full);
            if (std::any_of(r.begin(), r.end(), [](std::int64_t x) { return x != 0; }) && why.empty())
                why = s.vector.str();
        }
        rep.add("haken-residual", why.empty(), why);
    }
    return rep;
}

/// Fixture records shipped with the library.
inline std::vector<FixtureRecord> fixtures() { return parse_fixture_text(kFixtureText); }

/// Checks every property tagged on a fixture; is_fundamental uses `budget`.
inline VerificationReport verify_fixture(const FixtureRecord& f, const Budget& budget = {}) {
    const LensTriangulation tri(f.params);
    VerificationReport rep{f.name + " in " + detail::label(f.params), f.params, {}};
    const SolutionCone cone = q_cone(tri);
    const bool solution = is_q_solution(cone.matrix(), f.vector);
    const bool square = f.vector.is_nonnegative() && square_condition(f.vector);
    if (f.has("solution")) rep.add("solution", solution);
    if (f.has("square")) rep.add("square", square);
    if (!solution || !square) return rep;

    const SurfaceReport r = classify(tri, f.vector);
    if (f.has("criterion")) rep.add("criterion", r.meets_cores_once && r.has_type23_quad);
    if (f.has("fundamental") || f.has("not-fundamental")) {
        const bool fund = is_fundamental(cone, f.vector, budget);
        if (f.has("fundamental")) rep.add("fundamental", fund);
        if (f.has("not-fundamental")) rep.add("not-fundamental", !fund);
    }
    if (const auto e = f.tag_value("euler")) rep.add("euler", r.euler == *e, "chi = " + std::to_string(r.euler));
    if (f.has("orientable")) rep.add("orientable", r.orientable);
    if (f.has("non-orientable")) rep.add("non-orientable", !r.orientable);
    if (const auto k = f.tag_value("components"))
        rep.add("components", static_cast<std::int64_t>(r.components.size()) == *k,
                std::to_string(r.components.size()) + " components");
    return rep;
}

} // namespace qlens
