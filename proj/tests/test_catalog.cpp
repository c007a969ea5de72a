#include <gtest/gtest.h>

#include <algorithm>

#include "qlens/catalog.hpp"

using namespace qlens;

namespace {

std::vector<QVector> vectors_of(const std::vector<QFundamentalSurface>& xs) {
    std::vector<QVector> out;
    for (const auto& x : xs) out.push_back(x.vector);
    return out;
}

const FixtureRecord& fixture_named(const std::vector<FixtureRecord>& all, int p, std::string_view name) {
    const auto it = std::find_if(all.begin(), all.end(),
                                 [&](const FixtureRecord& f) { return f.params.p == p && f.name == name; });
    if (it == all.end()) throw std::runtime_error("missing fixture " + std::string(name));
    return *it;
}

} // namespace

TEST(Expected, Counts) {
    EXPECT_EQ(expected_for(2, 1).expected_q_fundamental.size(), 3u);
    EXPECT_EQ(expected_for(6, 1).expected_q_fundamental.size(), 9u);
    EXPECT_EQ(expected_for(7, 1).expected_q_fundamental.size(), 8u);
    EXPECT_EQ(expected_for(7, 2).expected_q_fundamental.size(), 8u);
    EXPECT_EQ(expected_for(5, 2).expected_q_fundamental.size(), 6u);
    EXPECT_FALSE(has_expectation(7, 3));
    EXPECT_FALSE(has_expectation(3, 2));
    try {
        expected_for(7, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoExpectation);
    }
    EXPECT_THROW(expected_for(4, 2), Error);
}

TEST(Expected, ReportsForLensTwoOne) {
    const auto c = expected_for(2, 1);
    const auto torus = c.report_for(named::f1());
    ASSERT_TRUE(torus.has_value());
    EXPECT_EQ(torus->euler, 0);
    EXPECT_TRUE(torus->orientable);
    for (const auto& v : {named::f2(), named::f3()}) {
        const auto r = c.report_for(v);
        ASSERT_TRUE(r.has_value());
        EXPECT_EQ(r->euler, 1);
        EXPECT_FALSE(r->orientable);
    }
}

TEST(Enumerate, LensTwoOne) {
    EXPECT_EQ(vectors_of(enumerate_q_fundamental(2, 1)), expected_for(2, 1).expected_q_fundamental);
}

TEST(Enumerate, LensPOne) {
    for (int p = 3; p <= 6; ++p) {
        const auto got = vectors_of(enumerate_q_fundamental(p, 1));
        EXPECT_EQ(got, expected_for(p, 1).expected_q_fundamental) << p;
        EXPECT_EQ(got.size(), static_cast<std::size_t>(p % 2 == 0 ? p + 3 : p + 1));
    }
}

TEST(Enumerate, LensPTwo) {
    for (int p : {5, 7}) {
        const auto got = enumerate_q_fundamental(p, 2);
        EXPECT_EQ(vectors_of(got), expected_for(p, 2).expected_q_fundamental) << p;
        for (const auto& s : got) {
            const auto e = expected_for(p, 2).report_for(s.vector);
            ASSERT_TRUE(e.has_value());
            EXPECT_EQ(s.report.euler, e->euler);
            EXPECT_EQ(s.report.orientable, e->orientable);
        }
    }
}

TEST(Enumerate, MirrorCounts) {
    for (const auto& lp : coprime_params(7, 3)) {
        if (2 * lp.q > lp.p) continue;
        EXPECT_EQ(enumerate_q_fundamental(lp.p, lp.q).size(), enumerate_q_fundamental(lp.p, lp.p - lp.q).size())
            << lp.p << "," << lp.q;
    }
}

TEST(Verify, AllChecksPass) {
    for (const auto& lp : coprime_params(7)) {
        const auto rep = verify_theorems(lp.p, lp.q);
        EXPECT_TRUE(rep.passed()) << rep.subject;
        for (const auto& c : rep.checks) EXPECT_NE(c.status, CheckStatus::Fail) << rep.subject << " " << c.name;
    }
}

TEST(Verify, CheckSelection) {
    auto status = [](const VerificationReport& r, std::string_view name) {
        for (const auto& c : r.checks)
            if (c.name == name) return c.status;
        throw std::runtime_error("no check " + std::string(name));
    };
    const auto r41 = verify_theorems(4, 1);
    EXPECT_EQ(status(r41, "non-vertex"), CheckStatus::Pass);
    EXPECT_EQ(status(r41, "half-integer-exclusion"), CheckStatus::Skip);
    const auto r73 = verify_theorems(7, 3);
    EXPECT_EQ(status(r73, "expected-set"), CheckStatus::Skip);
    EXPECT_EQ(status(r73, "coefficient-bounds"), CheckStatus::Pass);
    EXPECT_EQ(status(r73, "half-integer-exclusion"), CheckStatus::Pass);
    EXPECT_EQ(status(r73, "parity"), CheckStatus::Pass);
    EXPECT_EQ(status(verify_theorems(5, 2), "integrality"), CheckStatus::Pass);
}

TEST(Identities, DoubledNonVertexSurfaces) {
    for (int p = 4; p <= 12; p += 2) {
        QVector even = QVector::zeros(p), odd = QVector::zeros(p);
        for (int i = 1; i <= p; ++i) (i % 2 == 0 ? even : odd) += named::t_prime(p, i);
        EXPECT_EQ(2 * named::f_prime_2(p), even);
        EXPECT_EQ(2 * named::f_prime_3(p), odd);
    }
}

TEST(Identities, TwiceHIsSumOfOddBasisVectors) {
    for (int p : {8, 16, 30}) {
        for (int q : {3, 11}) {
            if (q >= p || std::gcd(p, q) != 1) continue;
            const LensTriangulation tri({p, q});
            const QBasis b = basis_vectors(tri);
            QVector odd = QVector::zeros(p);
            for (int i = 1; i <= p; i += 2) odd += b.t[i - 1];
            EXPECT_EQ(2 * named::h(p), odd) << p << "," << q;
        }
    }
}

TEST(Fixtures, Transcription) {
    const auto all = fixtures();
    ASSERT_EQ(all.size(), 9u);
    for (const auto& f : all) {
        const LensTriangulation tri(f.params);
        EXPECT_TRUE(is_q_solution(q_matrix(tri), f.vector)) << f.name;
        EXPECT_TRUE(square_condition(f.vector)) << f.name;
    }
    const auto& large = fixture_named(all, 418, "large");
    EXPECT_EQ(large.vector.size(), 1254u);
    EXPECT_TRUE(large.checksum.has_value());
}

TEST(Fixtures, StatedIdentities) {
    const auto all = fixtures();
    const LensTriangulation t83({8, 3});
    const auto b83 = basis_vectors(t83);
    EXPECT_EQ(fixture_named(all, 8, "h").vector, named::h(8));
    EXPECT_EQ(fixture_named(all, 8, "h-t1").vector, named::h(8) - b83.t[0]);

    const auto b16 = basis_vectors(LensTriangulation({16, 3}));
    EXPECT_EQ(fixture_named(all, 16, "h-t1-t9").vector, named::h(16) - b16.t[0] - b16.t[8]);
    EXPECT_EQ(fixture_named(all, 16, "h-t1-t7").vector, named::h(16) - b16.t[0] - b16.t[6]);

    const auto b30 = basis_vectors(LensTriangulation({30, 11}));
    QVector v = named::h(30);
    for (int i : {1, 3, 5, 7, 9}) v -= b30.t[i - 1];
    EXPECT_EQ(fixture_named(all, 30, "h-t1-t3-t5-t7-t9").vector, v);
}

TEST(Fixtures, LeadingBlocks) {
    const auto all = fixtures();
    const auto& torus = fixture_named(all, 18, "torus").vector;
    EXPECT_EQ(torus.block(1), (std::array<std::int64_t, 3>{0, 0, 1}));
    EXPECT_EQ(torus.block(2), (std::array<std::int64_t, 3>{0, 0, 0}));
    const auto& compressed = fixture_named(all, 30, "compressed-a").vector;
    EXPECT_EQ(compressed.block(1), (std::array<std::int64_t, 3>{0, 0, 0}));
    EXPECT_EQ(compressed.block(3), (std::array<std::int64_t, 3>{1, 0, 0}));
}

TEST(Fixtures, VerifyAll) {
    for (const auto& f : fixtures()) {
        const auto rep = verify_fixture(f);
        EXPECT_TRUE(rep.passed()) << rep.subject;
        EXPECT_FALSE(rep.checks.empty());
    }
}

TEST(Fixtures, Classification) {
    const auto all = fixtures();
    auto report = [&](int p, std::string_view name) {
        const auto& f = fixture_named(all, p, name);
        return classify(LensTriangulation(f.params), f.vector);
    };
    const auto klein = report(8, "h-t1");
    EXPECT_EQ(klein.euler, 0);
    EXPECT_FALSE(klein.orientable);
    for (auto name : {"h-t1-t9", "h-t1-t7"}) {
        const auto r = report(16, name);
        EXPECT_EQ(r.euler, -2);
        EXPECT_FALSE(r.orientable);
    }
    const auto torus = report(18, "torus");
    EXPECT_EQ(torus.euler, 0);
    EXPECT_TRUE(torus.orientable);
    EXPECT_EQ(report(30, "h-t1-t3-t5-t7-t9").euler, -3);
    EXPECT_EQ(report(30, "compressed-a").euler, -1);
    EXPECT_EQ(report(30, "compressed-b").euler, -1);
    const auto large = report(418, "large");
    EXPECT_TRUE(large.meets_cores_once);
    EXPECT_TRUE(large.has_type23_quad);
}

TEST(Fixtures, VerifyDetectsWrongTags) {
    auto f = fixtures().front();
    f.tags = {"solution", "square", "fundamental", "euler:5", "orientable"};
    const auto rep = verify_fixture(f);
    EXPECT_FALSE(rep.passed());
    std::size_t failed = 0;
    for (const auto& c : rep.checks) failed += c.status == CheckStatus::Fail;
    EXPECT_EQ(failed, 3u);
}
