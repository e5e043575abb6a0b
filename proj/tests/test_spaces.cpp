#include <gtest/gtest.h>

#include "tetra/spaces.hpp"

#include <set>

using namespace tetra;

namespace {

Signature sig(const char* s) { return Signature::parse(s); }

TEST(EnumerateWl, HandExamples) {
    EXPECT_EQ(enumerate_Wl(sig("11"), 1), (std::vector<State>{{0, 1}, {1, 0}}));
    EXPECT_TRUE(enumerate_Wl(sig("11"), 3).empty());
    EXPECT_EQ(enumerate_Wl(sig("10"), 2), (std::vector<State>{{0, 2}, {1, 1}}));
    EXPECT_EQ(enumerate_Wl(sig("0"), 0), (std::vector<State>{{0}}));
    EXPECT_THROW(enumerate_Wl(sig("0"), -1), std::domain_error);
}

// coefficient of u^l in prod (1+u)^{#ones} (1-u)^{-#zeros}
long series_coefficient(const Signature& s, int l) {
    std::vector<long> c(l + 1, 0);
    c[0] = 1;
    for (int b : s.eps) {
        std::vector<long> d(l + 1, 0);
        for (int i = 0; i <= l; ++i) {
            if (b) d[i] = c[i] + (i ? c[i - 1] : 0);
            else
                for (int j = 0; j <= i; ++j) d[i] += c[j];
        }
        c = d;
    }
    return c[l];
}

TEST(EnumerateWl, CountMatchesGeneratingFunction) {
    for (int n = 1; n <= 4; ++n)
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> e(n);
            for (int i = 0; i < n; ++i) e[i] = (mask >> i) & 1;
            Signature s(e);
            for (int l = 0; l <= 6; ++l) {
                auto w = enumerate_Wl(s, l);
                EXPECT_EQ(static_cast<long>(w.size()), series_coefficient(s, l));
                EXPECT_TRUE(std::is_sorted(w.begin(), w.end()));
                for (auto& m : w) {
                    EXPECT_TRUE(s.admits(m));
                    EXPECT_EQ(total(m), l);
                }
            }
        }
}

TEST(PairSector, BExamples) {
    auto v = enumerate_pair_sector(sig("10"), SectorKey::B({1, 1}));
    std::vector<Key> want{{0, 0, 1, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 1, 0, 0}};
    EXPECT_EQ(v, want);
    auto f = enumerate_pair_sector(sig("0"), SectorKey::B({2}));
    EXPECT_EQ(f, (std::vector<Key>{{0, 2}, {1, 1}, {2, 0}}));
    EXPECT_THROW(enumerate_pair_sector(sig("10"), SectorKey::B({1})), std::domain_error);
    EXPECT_THROW(enumerate_pair_sector(sig("10"), SectorKey::Parity(0, 0)), std::domain_error);
}

TEST(PairSector, VSlotCapacity) {
    // s = 2 on a V slot forces a = b = 1; s = 3 is empty
    EXPECT_EQ(enumerate_pair_sector(sig("1"), SectorKey::B({2})), (std::vector<Key>{{1, 1}}));
    EXPECT_TRUE(enumerate_pair_sector(sig("1"), SectorKey::B({3})).empty());
}

TEST(PairSector, DisjointAndExhaustive) {
    for (const char* s : {"10", "01", "110", "00"}) {
        Signature g = sig(s);
        const int N = 4;
        std::set<Key> seen;
        size_t count = 0;
        for (auto& sv : b_sectors(g, N))
            for (auto& k : enumerate_pair_sector(g, SectorKey::B(sv))) {
                EXPECT_TRUE(seen.insert(k).second);
                ++count;
            }
        size_t brute = 0;
        auto all = enumerate_upto(g, N);
        for (auto& a : all)
            for (auto& b : all)
                if (total(a) + total(b) <= N) ++brute;
        EXPECT_EQ(count, brute);

        std::set<Key> seenA;
        size_t countA = 0;
        for (int l = 0; l <= N; ++l)
            for (int m = 0; l + m <= N; ++m)
                for (auto& k : enumerate_pair_sector(g, SectorKey::A(l, m))) {
                    EXPECT_TRUE(seenA.insert(k).second);
                    ++countA;
                }
        EXPECT_EQ(countA, brute);
        auto even = enumerate_pair_sector(g, SectorKey::Parity(0, 0), N);
        auto odd = enumerate_pair_sector(g, SectorKey::Parity(1, 0), N);
        auto m1 = enumerate_pair_sector(g, SectorKey::Parity(0, 1), N);
        auto m2 = enumerate_pair_sector(g, SectorKey::Parity(1, 1), N);
        EXPECT_EQ(even.size() + odd.size() + m1.size() + m2.size(), brute);
    }
}

TEST(Signature, Parsing) {
    EXPECT_EQ(sig("1,0,1").eps, (std::vector<int>{1, 0, 1}));
    EXPECT_THROW(Signature::parse("12"), std::invalid_argument);
    EXPECT_THROW(Signature::parse(""), std::invalid_argument);
    EXPECT_EQ(sig("110").str(), "110");
}

}  // namespace
