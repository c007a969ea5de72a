#include <gtest/gtest.h>

#include <random>

#include "qlens/catalog.hpp"
#include "qlens/qsystem.hpp"

using namespace qlens;

namespace {

RatVector unit(int p, int k) {
    RatVector b(p, Rational(0));
    b[k - 1] = Rational(1);
    return b;
}

} // namespace

TEST(QMatrix, Lens21) {
    const IntMatrix m = q_matrix(LensTriangulation({2, 1}));
    ASSERT_EQ(m.rows(), 4u);
    ASSERT_EQ(m.cols(), 6u);
    const IntVector rows[4] = {{-2, 2, 0, 2, 0, -2}, {2, 0, -2, -2, 2, 0}, {0, -1, 1, 0, -1, 1}, {0, -1, 1, 0, -1, 1}};
    for (std::size_t r = 0; r < 4; ++r)
        EXPECT_EQ(IntVector(m.row(r).begin(), m.row(r).end()), rows[r]) << r;
}

TEST(QMatrix, HorizontalAndVerticalRowsCoincide) {
    for (const auto& lp : coprime_params(12)) {
        const IntMatrix m = q_matrix(LensTriangulation(lp));
        ASSERT_EQ(m.rows(), static_cast<std::size_t>(lp.p + 2));
        for (std::size_t c = 0; c < m.cols(); ++c) {
            EXPECT_EQ(m(lp.p, c), m(lp.p + 1, c));
            std::int64_t spokes = 0;
            for (int r = 0; r < lp.p; ++r) spokes += m(r, c);
            EXPECT_EQ(spokes + 2 * m(lp.p, c), 0);
        }
    }
}

TEST(QMatrix, RowBlocksWithoutCollision) {
    const LensTriangulation tri({7, 3});
    const IntMatrix m = q_matrix(tri);
    for (int i = 1; i <= 7; ++i)
        for (int tet : {i, wrap(3 + i - 1, 7)}) {
            EXPECT_EQ(m(i - 1, QVector::index(tet, 1)), -1);
            EXPECT_EQ(m(i - 1, QVector::index(tet, 2)), 1);
            EXPECT_EQ(m(i - 1, QVector::index(tet, 3)), 0);
        }
}

TEST(QMatrix, RankAndKernel) {
    for (const auto& lp : coprime_params(12)) {
        const LensTriangulation tri(lp);
        const IntMatrix m = q_matrix(tri);
        EXPECT_EQ(rank(m), static_cast<std::size_t>(lp.p)) << lp.p << "," << lp.q;
        EXPECT_EQ(kernel_basis(m).size(), static_cast<std::size_t>(2 * lp.p));

        const QBasis basis = basis_vectors(tri);
        IntMatrix stacked(2 * lp.p, 3 * lp.p);
        int r = 0;
        for (const auto* family : {&basis.s, &basis.t})
            for (const auto& v : *family) {
                EXPECT_TRUE(is_q_solution(m, v));
                for (std::size_t c = 0; c < v.size(); ++c) stacked(r, c) = v[c];
                ++r;
            }
        EXPECT_EQ(rank(stacked), static_cast<std::size_t>(2 * lp.p)) << lp.p << "," << lp.q;
    }
}

TEST(QSolution, Examples) {
    const LensTriangulation t21({2, 1});
    const IntMatrix m21 = q_matrix(t21);
    EXPECT_TRUE(is_q_solution(m21, QVector::zeros(2)));
    EXPECT_FALSE(is_q_solution(m21, QVector({1, 0, 0, 0, 0, 0})));
    EXPECT_TRUE(is_q_solution(m21, named::f1()));
    for (int p = 3; p <= 8; ++p)
        EXPECT_TRUE(is_q_solution(q_matrix(LensTriangulation({p, 1})), named::t_prime(p, 1)));
    EXPECT_THROW(is_q_solution(m21, QVector({1, 0, 0})), Error);
}

TEST(Basis, LensP1FirstVector) {
    for (int p = 4; p <= 8; ++p) {
        QVector expected = QVector::zeros(p);
        expected.at(1, 3) = 2;
        expected.at(2, 2) = 1;
        expected.at(p, 2) = 1;
        EXPECT_EQ(named::t_prime(p, 1), expected) << p;
    }
}

TEST(Basis, GeneralFirstVector) {
    for (const auto& lp : coprime_params(11)) {
        if (lp.q < 2 || lp.q > lp.p - 2) continue;
        const auto t1 = basis_vectors(LensTriangulation(lp)).t[0];
        QVector expected = QVector::zeros(lp.p);
        expected.at(1, 3) = 1;
        expected.at(lp.q, 3) = 1;
        expected.at(lp.q + 1, 2) = 1;
        expected.at(lp.p, 2) = 1;
        EXPECT_EQ(t1, expected) << lp.p << "," << lp.q;
    }
}

TEST(Basis, SquareConditionOfBasis) {
    for (const auto& lp : coprime_params(10)) {
        const QBasis b = basis_vectors(LensTriangulation(lp));
        for (const auto& t : b.t) {
            EXPECT_TRUE(t.is_nonnegative());
            EXPECT_TRUE(square_condition(t));
        }
        for (const auto& s : b.s) EXPECT_FALSE(square_condition(s));
    }
}

TEST(Basis, RotationEquivariance) {
    for (const auto& lp : coprime_params(10)) {
        const QBasis b = basis_vectors(LensTriangulation(lp));
        for (int i = 1; i <= lp.p; ++i) {
            EXPECT_EQ(rotate(b.t[0], i - 1), b.t[i - 1]);
            EXPECT_EQ(rotate(b.s[0], i - 1), b.s[i - 1]);
        }
        EXPECT_EQ(rotate(b.t[0], lp.p), b.t[0]);
    }
}

TEST(Decompose, Examples) {
    for (int p = 3; p <= 8; ++p) {
        const LensTriangulation tri({p, 1});
        const auto c = decompose(tri, named::f_prime_1(p));
        for (int i = 0; i < p; ++i) {
            EXPECT_EQ(c.a[i], Rational(1));
            EXPECT_EQ(c.b[i], Rational(-1, 2));
        }
    }
    for (const auto& lp : coprime_params(9, 3)) {
        const LensTriangulation tri(lp);
        const auto c = decompose(tri, basis_vectors(tri).t[2]);
        EXPECT_TRUE(c.a_all_zero());
        EXPECT_EQ(c.b, unit(lp.p, 3));
    }
    for (int p = 4; p <= 10; p += 2) {
        const auto c = decompose(LensTriangulation({p, 1}), named::f_prime_2(p));
        EXPECT_TRUE(c.a_all_zero());
        for (int i = 1; i <= p; ++i) EXPECT_EQ(c.b[i - 1], i % 2 == 0 ? Rational(1, 2) : Rational(0)) << p << " " << i;
        const auto d = decompose(LensTriangulation({p, 1}), named::f_prime_3(p));
        for (int i = 1; i <= p; ++i) EXPECT_EQ(d.b[i - 1], i % 2 == 1 ? Rational(1, 2) : Rational(0)) << p << " " << i;
    }
}

TEST(Decompose, Errors) {
    const LensTriangulation tri({5, 2});
    try {
        decompose(tri, QVector::zeros(4));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
    }
    QVector bad = QVector::zeros(5);
    bad.at(1, 1) = 1;
    try {
        decompose(tri, bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotASolution);
    }
}

TEST(Decompose, RoundTrip) {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (const auto& lp : coprime_params(10)) {
        const LensTriangulation tri(lp);
        for (int trial = 0; trial < 10; ++trial) {
            BasisCoefficients c;
            for (int i = 0; i < lp.p; ++i) {
                c.a.emplace_back(coef(rng));
                c.b.emplace_back(coef(rng));
            }
            const RatVector v = expand(tri, c);
            EXPECT_EQ(decompose(tri, v), c) << lp.p << "," << lp.q;

            const IntMatrix m = q_matrix(tri);
            for (const auto& r : multiply(m, std::span<const Rational>(v))) EXPECT_TRUE(r.is_zero());
        }
    }
}

TEST(Decompose, BlockFormulaMatchesBasisSum) {
    for (const auto& lp : coprime_params(9)) {
        const LensTriangulation tri(lp);
        const QBasis b = basis_vectors(tri);
        for (int k = 1; k <= lp.p; ++k) {
            BasisCoefficients c{RatVector(lp.p, Rational(0)), unit(lp.p, k)};
            RatVector expected;
            for (auto x : b.t[k - 1].entries()) expected.emplace_back(x);
            EXPECT_EQ(expand(tri, c), expected);
            c = {unit(lp.p, k), RatVector(lp.p, Rational(0))};
            expected.clear();
            for (auto x : b.s[k - 1].entries()) expected.emplace_back(x);
            EXPECT_EQ(expand(tri, c), expected);
        }
    }
}

TEST(SquareCondition, Examples) {
    EXPECT_FALSE(square_condition(QVector({1, 1, 1, 0, 0, 0})));
    EXPECT_TRUE(square_condition(named::f1()));
    EXPECT_TRUE(square_condition(QVector::zeros(3)));
    EXPECT_THROW(square_condition(QVector({-1, 0, 0})), Error);
}

TEST(Integrality, Examples) {
    const LensTriangulation t51({5, 1});
    const auto from_t = integrality_class(decompose(t51, named::t_prime(5, 2)), 5);
    EXPECT_FALSE(from_t.p_even);
    EXPECT_EQ(from_t.all, CoefficientClass::Integer);

    const auto f1_odd = integrality_class(decompose(t51, named::f_prime_1(5)), 5);
    EXPECT_EQ(f1_odd.all, CoefficientClass::HalfInteger);

    const LensTriangulation t61({6, 1});
    const auto f2 = integrality_class(decompose(t61, named::f_prime_2(6)), 6);
    EXPECT_TRUE(f2.p_even);
    EXPECT_EQ(f2.even, CoefficientClass::HalfInteger);
    EXPECT_EQ(f2.odd, CoefficientClass::Zero);

    const auto f1_even = integrality_class(decompose(t61, named::f_prime_1(6)), 6);
    EXPECT_EQ(f1_even.even, CoefficientClass::HalfInteger);
    EXPECT_EQ(f1_even.odd, CoefficientClass::HalfInteger);
}

TEST(Integrality, RejectsMixedCoefficients) {
    BasisCoefficients c{RatVector(3, Rational(0)), {Rational(1, 2), Rational(1), Rational(0)}};
    try {
        integrality_class(c, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IntegralityViolated);
    }
    c = {{Rational(1, 2), Rational(0), Rational(0)}, RatVector(3, Rational(0))};
    EXPECT_THROW(integrality_class(c, 3), Error);
}

TEST(Integrality, HoldsForRandomIntegralSolutions) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (const auto& lp : coprime_params(9)) {
        const LensTriangulation tri(lp);
        const QBasis b = basis_vectors(tri);
        for (int trial = 0; trial < 20; ++trial) {
            QVector v = QVector::zeros(lp.p);
            for (int i = 0; i < lp.p; ++i) v += coef(rng) * b.s[i] + coef(rng) * b.t[i];
            EXPECT_NO_THROW(integrality_class(decompose(tri, v), lp.p)) << v.str();
        }
        if (lp.q == 1 && lp.p % 2 == 0) {
            EXPECT_NO_THROW(integrality_class(decompose(tri, named::f_prime_3(lp.p)), lp.p));
        }
    }
}

TEST(QVector, Basics) {
    const QVector v({1, 2, 3, 4, 5, 6});
    EXPECT_EQ(v.p(), 2);
    EXPECT_EQ(v.degree(), 21);
    EXPECT_EQ(v.block(2), (std::array<std::int64_t, 3>{4, 5, 6}));
    EXPECT_EQ(v.str(), "1,2,3|4,5,6");
    EXPECT_TRUE(QVector::zeros(2).leq(v));
    EXPECT_FALSE(v.leq(QVector::zeros(2)));
    EXPECT_EQ(2 * v - v, v);
    EXPECT_THROW(QVector({1, 2}), Error);
    EXPECT_THROW(v + QVector::zeros(3), Error);
    EXPECT_TRUE(graded_lex_less(QVector({0, 0, 1}), QVector({1, 0, 0})));
    EXPECT_TRUE(graded_lex_less(QVector({1, 0, 0}), QVector({0, 1, 1})));
}

TEST(QVector, OverflowIsDetected) {
    const QVector big({std::numeric_limits<std::int64_t>::max(), 0, 0});
    try {
        (void)(big + big);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Overflow);
    }
}
