// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "qlens/qlens.hpp"

using namespace qlens;

namespace {

int failures = 0;

struct Outcome {
    bool ok = true;
    std::string note;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) note = what;
        ok = ok && cond;
    }
};

void criterion(const std::string& id, const std::string& title, double limit_seconds,
               const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.note = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && secs > limit_seconds) out.require(false, "took longer than the time limit");
    if (!out.ok) ++failures;
    std::printf("%s %-4s %s (%.3f s)%s%s\n", out.ok ? "PASS" : "FAIL", id.c_str(), title.c_str(), secs,
                out.note.empty() ? "" : ": ", out.note.c_str());
    std::fflush(stdout);
}

/// Enumerates T(p,q) within `limit` seconds and compares with the known list.
void enumeration_matches(Outcome& out, int p, int q, double limit, std::size_t count) {
    Budget budget;
    budget.max_seconds = limit;
    const auto start = std::chrono::steady_clock::now();
    const auto got = enumerate_q_fundamental(p, q, budget);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::vector<QVector> vs;
    for (const auto& s : got) vs.push_back(s.vector);
    const std::string tag = "T(" + std::to_string(p) + "," + std::to_string(q) + ")";
    out.require(vs == expected_for(p, q).expected_q_fundamental, tag + " differs from the expected set");
    out.require(vs.size() == count, tag + " has " + std::to_string(vs.size()) + " surfaces");
    out.require(secs <= limit, tag + " over its time limit");
}

bool report_is(const SurfaceReport& r, std::int64_t euler, bool orientable, std::size_t components = 0) {
    return r.euler == euler && r.orientable == orientable && (components == 0 || r.components.size() == components);
}

std::string dump_enumeration(int p, int q, int threads) {
    Budget b;
    b.threads = threads;
    std::string s;
    for (const auto& x : enumerate_q_fundamental(p, q, b))
        s += x.vector.str() + " " + std::to_string(x.report.euler) + (x.report.orientable ? " o\n" : " n\n");
    return s;
}

std::string dump_verification(int p, int q) {
    std::string s;
    for (const auto& c : verify_theorems(p, q).checks)
        s += c.name + " " + std::string(to_string(c.status)) + " " + c.detail + "\n";
    return s;
}

} // namespace

int main() {
    criterion("1", "T(2,1) has exactly the Q-fundamental surfaces f1, f2, f3", 1.0,
              [](Outcome& out) { enumeration_matches(out, 2, 1, 1.0, 3); });

    for (int p = 3; p <= 6; ++p)
        criterion("2", "T(" + std::to_string(p) + ",1) matches the expected list", 60.0,
                  [p](Outcome& out) { enumeration_matches(out, p, 1, 60.0, p % 2 == 0 ? p + 3 : p + 1); });

    for (int p : {5, 7})
        criterion("3", "T(" + std::to_string(p) + ",2) has p+1 Q-fundamental surfaces", 120.0,
                  [p](Outcome& out) { enumeration_matches(out, p, 2, 120.0, p + 1); });

    for (int p = 2; p <= 12; ++p)
        criterion("4", "p=" + std::to_string(p) + ": rank p and the 2p basis vectors span the kernel", 1.0,
                  [p](Outcome& out) {
                      for (const auto& lp : coprime_params(p, p)) {
                          const LensTriangulation tri(lp);
                          const IntMatrix m = q_matrix(tri);
                          const std::string tag = "q=" + std::to_string(lp.q);
                          out.require(rank(m) == static_cast<std::size_t>(p), tag + ": rank");
                          out.require(kernel_basis(m).size() == static_cast<std::size_t>(2 * p), tag + ": nullity");
                          const QBasis b = basis_vectors(tri);
                          IntMatrix stacked(2 * p, 3 * p);
                          int r = 0;
                          for (const auto* fam : {&b.s, &b.t})
                              for (const auto& v : *fam) {
                                  out.require(is_q_solution(m, v), tag + ": basis vector not a solution");
                                  for (std::size_t c = 0; c < v.size(); ++c) stacked(r, c) = v[c];
                                  ++r;
                              }
                          out.require(rank(stacked) == static_cast<std::size_t>(2 * p), tag + ": basis rank");
                      }
                  });

    criterion("5", "classification of the named surfaces", 0, [](Outcome& out) {
        for (int p = 3; p <= 8; ++p) {
            const LensTriangulation tri({p, 1});
            const std::string tag = "T(" + std::to_string(p) + ",1)";
            for (int i = 1; i <= p; ++i)
                out.require(report_is(classify(tri, named::t_prime(p, i)), 2, true, 1), tag + " t'");
            out.require(report_is(classify(tri, named::f_prime_1(p)), 0, true), tag + " f'_1");
            if (p % 2 == 0) {
                out.require(report_is(classify(tri, named::f_prime_2(p)), 2 - p / 2, false, 1), tag + " f'_2");
                out.require(report_is(classify(tri, named::f_prime_3(p)), 2 - p / 2, false, 1), tag + " f'_3");
            }
        }
        for (int p : {5, 7, 9}) {
            const LensTriangulation tri({p, 2});
            const std::string tag = "T(" + std::to_string(p) + ",2)";
            for (int i = 1; i <= p; ++i)
                out.require(report_is(classify(tri, named::t_double_prime(p, i)), 2, true, 1), tag + " t''");
            out.require(report_is(classify(tri, named::f_double_prime_1(p)), 0, true), tag + " f''_1");
        }
        const LensTriangulation t21({2, 1});
        out.require(report_is(classify(t21, named::f1()), 0, true), "f_1");
        out.require(report_is(classify(t21, named::f2()), 1, false), "f_2");
        out.require(report_is(classify(t21, named::f3()), 1, false), "f_3");
        out.require(report_is(classify(t21, 2 * named::f2()), 2, true, 1), "2f_2");
    });

    for (const auto& f : fixtures())
        criterion("6", "fixture " + f.name + " in T(" + std::to_string(f.params.p) + "," +
                           std::to_string(f.params.q) + ")",
                  30.0, [&f](Outcome& out) {
                      Budget b;
                      b.max_seconds = 30;
                      const auto rep = verify_fixture(f, b);
                      for (const auto& c : rep.checks) out.require(c.status != CheckStatus::Fail, c.name);
                  });

    criterion("7", "f'_2 and f'_3 are not vertex solutions for p = 4, 6", 0, [](Outcome& out) {
        for (int p : {4, 6}) {
            const SolutionCone cone = q_cone(LensTriangulation({p, 1}));
            QVector even = QVector::zeros(p), odd = QVector::zeros(p);
            for (int i = 1; i <= p; ++i) (i % 2 == 0 ? even : odd) += named::t_prime(p, i);
            const std::string tag = "p=" + std::to_string(p);
            out.require(!is_vertex(cone, named::f_prime_2(p)), tag + ": f'_2 is a vertex");
            out.require(!is_vertex(cone, named::f_prime_3(p)), tag + ": f'_3 is a vertex");
            out.require(2 * named::f_prime_2(p) == even, tag + ": 2f'_2 identity");
            out.require(2 * named::f_prime_3(p) == odd, tag + ": 2f'_3 identity");
        }
    });

    criterion("8a", "hilbert_basis equals the brute-force oracle for p <= 4", 0, [](Outcome& out) {
        for (const auto& lp : coprime_params(4)) {
            const LensTriangulation tri(lp);
            std::vector<QVector> hb;
            for (auto& x : hilbert_basis(q_cone(tri))) hb.emplace_back(std::move(x));
            out.require(hb == brute_force_minimal_solutions(tri, CoefficientRanges{0, 3, -4, 4}),
                        "T(" + std::to_string(lp.p) + "," + std::to_string(lp.q) + ")");
        }
    });

    auto suite = [](const std::string& check) {
        return [check](Outcome& out) {
            for (const auto& lp : coprime_params(7)) {
                const auto rep = verify_theorems(lp.p, lp.q);
                for (const auto& c : rep.checks)
                    if (c.name == check) out.require(c.status != CheckStatus::Fail, rep.subject + ": " + c.detail);
            }
        };
    };
    criterion("8b", "parity law for every enumerated surface, p <= 7", 0, suite("parity"));
    criterion("8c", "coefficient bounds and half-integer exclusion, p <= 7", 0, [&suite](Outcome& out) {
        suite("coefficient-bounds")(out);
        suite("half-integer-exclusion")(out);
        suite("integrality")(out);
    });
    criterion("8d", "Haken residual is zero for every reconstruction, p <= 7", 0, suite("haken-residual"));

    criterion("8e", "repeated runs are identical", 0, [](Outcome& out) {
        for (const LensParams lp : {LensParams{6, 1}, LensParams{7, 2}, LensParams{7, 3}}) {
            const std::string tag = "T(" + std::to_string(lp.p) + "," + std::to_string(lp.q) + ")";
            const std::string a = dump_enumeration(lp.p, lp.q, 1);
            out.require(a == dump_enumeration(lp.p, lp.q, 1), tag + ": enumeration");
            out.require(a == dump_enumeration(lp.p, lp.q, 4), tag + ": enumeration with threads");
            out.require(dump_verification(lp.p, lp.q) == dump_verification(lp.p, lp.q), tag + ": verification");
        }
    });

    std::printf("%s\n", failures == 0 ? "all criteria passed" : (std::to_string(failures) + " failed").c_str());
    return failures == 0 ? 0 : 1;
}
