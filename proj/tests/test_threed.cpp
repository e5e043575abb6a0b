#include <gtest/gtest.h>

#include "tetra/threed.hpp"

#include <random>

using namespace tetra;

namespace {

ThreeD td_half() { return ThreeD(QPoint(Rational(1, 2))); }

TEST(RElement, FrozenValues) {
    ThreeD td = td_half();
    EXPECT_EQ(td.R(0, 0, 0, 0, 0, 0), 1);
    EXPECT_EQ(td.R(0, 1, 0, 1, 0, 1), Rational(15, 16));
    EXPECT_EQ(td.R(1, 0, 1, 0, 1, 0), 1);
    EXPECT_EQ(td.R(1, 0, 0, 0, 0, 0), 0);
    EXPECT_EQ(td.R(-1, 1, 0, 0, 0, 0), 0);
}

TEST(RElement, SingleTermHandValues) {
    // (a,b,c;i,j,k) = (1,0,0;1,0,0): one term q^{i(c-j)} = 1
    ThreeD td = td_half();
    EXPECT_EQ(td.R(1, 0, 0, 1, 0, 0), 1);
    // (0,0,1;0,0,1): i = 0, one term, value 1
    EXPECT_EQ(td.R(0, 0, 1, 0, 0, 1), 1);
    // (0,1,0;0,1,0): lambda = 1, sign -1, q^{(k+1)} = q
    EXPECT_EQ(td.R(0, 1, 0, 0, 1, 0), -Rational(1, 4));
}

TEST(RElement, MemoizedValuesAreStable) {
    ThreeD td = td_half();
    Rational first = td.R(2, 1, 1, 1, 2, 0);
    EXPECT_GT(td.cache_size(), 0u);
    EXPECT_EQ(td.R(2, 1, 1, 1, 2, 0), first);
}

TEST(LElement, SixPatterns) {
    ThreeD td = td_half();
    for (int m = 0; m <= 4; ++m) {
        for (int j = 0; j <= 5; ++j)
            EXPECT_EQ(td.L(0, 1, j, 1, 0, m), j == m - 1 ? Rational(1 - td.qpoint().qpow(2 * m)) : Rational(0));
        EXPECT_EQ(td.L(0, 1, m, 0, 1, m), -td.qpoint().qpow(m + 1));
        EXPECT_EQ(td.L(1, 0, m, 1, 0, m), td.qpoint().qpow(m));
        EXPECT_EQ(td.L(0, 0, m, 0, 0, m), 1);
        EXPECT_EQ(td.L(1, 1, m, 1, 1, m), 1);
        EXPECT_EQ(td.L(1, 0, m + 1, 0, 1, m), 1);
        EXPECT_EQ(td.L(0, 0, m, 1, 1, m), 0);
        EXPECT_EQ(td.L(2, 0, m, 1, 1, m), 0);
    }
}

TEST(Conservation, NonConservingElementsVanish) {
    ThreeD td(QPoint(Rational(2, 3)));
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c)
                for (int i = 0; i <= 2; ++i)
                    for (int j = 0; j <= 2; ++j)
                        for (int k = 0; k <= 2; ++k)
                            if (!ThreeD::conserves(a, b, c, i, j, k)) {
                                EXPECT_EQ(td.R(a, b, c, i, j, k), 0);
                                EXPECT_EQ(td.L(a, b, c, i, j, k), 0);
                            }
}

TEST(RStructure, TransposeAndWeightedTranspose) {
    ThreeD td = td_half();
    const QPoint& pt = td.qpoint();
    const int B = 3;
    for (int a = 0; a <= B; ++a)
        for (int b = 0; b <= B; ++b)
            for (int c = 0; c <= B; ++c)
                for (int i = 0; i <= B; ++i)
                    for (int j = 0; j <= B; ++j)
                        for (int k = 0; k <= B; ++k) {
                            Rational r = td.R(a, b, c, i, j, k);
                            EXPECT_EQ(r, td.R(c, b, a, k, j, i));
                            EXPECT_EQ(r * qp(pt, 2, a) * qp(pt, 2, b) * qp(pt, 2, c),
                                      qp(pt, 2, i) * qp(pt, 2, j) * qp(pt, 2, k) * td.R(i, j, k, a, b, c));
                        }
}

TEST(RStructure, Involution) {
    ThreeD td(QPoint(Rational(3, 5)));
    for (int s1 = 0; s1 <= 3; ++s1)
        for (int s2 = 0; s2 <= 3; ++s2)
            for (int j = 0; j <= std::min(s1, s2); ++j) {
                Vec<Gauss> v{{Key{s1 - j, j, s2 - j}, Gauss(1)}};
                auto w = apply_local(td, 0, {0, 1, 2}, apply_local(td, 0, {0, 1, 2}, v));
                EXPECT_EQ(w, v);
            }
}

TEST(RStructure, WeightCommutation) {
    ThreeD td = td_half();
    Rational x(3, 7), y(-5, 2);
    for (int s1 = 0; s1 <= 3; ++s1)
        for (int s2 = 0; s2 <= 3; ++s2)
            for (int j = 0; j <= std::min(s1, s2); ++j) {
                Key in{s1 - j, j, s2 - j};
                auto weight = [&](const Key& k) -> Rational { return rat_pow(x, k[0]) * rat_pow(x * y, k[1]) * rat_pow(y, k[2]); };
                Vec<Gauss> v{{in, Gauss(1)}};
                auto Rv = apply_local(td, 0, {0, 1, 2}, v);
                for (auto& [out, val] : Rv) EXPECT_EQ(Gauss(weight(out)) * val, val * Gauss(weight(in)));
            }
}

TEST(Oscillator, Relations) {
    EXPECT_TRUE(check_oscillator_relations(QPoint(Rational(1, 2)), 8));
    EXPECT_TRUE(check_oscillator_relations(QPoint(Rational(4, 9)), 8));
}

TEST(Tetrahedron, VacuumIsFixed) {
    ThreeD td = td_half();
    State zero(6, 0);
    Vec<Gauss> want{{zero, Gauss(1)}};
    EXPECT_EQ(apply_threed(td, TetraKind::RRRR, Side::Left, zero), want);
    EXPECT_EQ(apply_threed(td, TetraKind::RRRR, Side::Right, zero), want);
}

TEST(Tetrahedron, SmallInputs) {
    ThreeD td = td_half();
    EXPECT_TRUE(tetrahedron_residual(td, TetraKind::RRRR, {1, 0, 0, 0, 0, 0}).empty());
    EXPECT_TRUE(tetrahedron_residual(td, TetraKind::RLLL, {1, 0, 0, 0, 0, 0}).empty());
    EXPECT_TRUE(tetrahedron_residual(td, TetraKind::RRRR, {0, 1, 0, 1, 0, 0}).empty());
    EXPECT_TRUE(tetrahedron_residual(td, TetraKind::RLLL, {1, 1, 0, 2, 0, 1}).empty());
    EXPECT_THROW(apply_threed(td, TetraKind::RLLL, Side::Left, {2, 0, 0, 0, 0, 0}), std::domain_error);
    EXPECT_THROW(apply_threed(td, TetraKind::RRRR, Side::Left, {0, 0, 0}), std::domain_error);
}

TEST(LocalIdentity, Examples) {
    ThreeD td = td_half();
    EXPECT_TRUE(local_identity(td, "bracket-1", {0, 0, 0, 0, 0, 0}).is_zero());
    EXPECT_TRUE(local_identity(td, "shift-3", {1, 0, 0, 0, 0, 1}).is_zero());
    EXPECT_THROW(local_identity(td, "nope", {0, 0, 0, 0, 0, 0}), std::domain_error);
    EXPECT_THROW(local_identity(td, "bracket-1", {0, 0, 0}), std::domain_error);
}

TEST(LocalIdentity, SweepsSmall) {
    ThreeD td(QPoint(Rational(2, 3)));
    for (auto& name : local_identity_names()) {
        auto r = sweep_identity(td, name, 2);
        EXPECT_GT(r.checked, 0) << name;
        EXPECT_EQ(r.failed, 0) << name << " first failure residual " << r.first_residual;
    }
}

}  // namespace
