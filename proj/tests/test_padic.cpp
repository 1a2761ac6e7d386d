#include <random>

#include <gtest/gtest.h>

#include "hmvol/density.hpp"
#include "hmvol/expr.hpp"
#include "hmvol/padic.hpp"

using namespace hmvol;

namespace {

Lattice lat(const char* text) { return expr::parse_lattice(text); }

// A random composition of constructors with small parameters.
Lattice random_lattice(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 4), count(1, 4), scale(1, 12), sign(0, 1);
    Lattice acc = hyperbolic_plane(scale(rng) % 3 + 1);
    const int pieces = count(rng);
    for (int k = 0; k < pieces; ++k) {
        const int c = scale(rng) * (sign(rng) ? 1 : -1);
        switch (pick(rng)) {
            case 0: acc = direct_sum(acc, hyperbolic_plane(c)); break;
            case 1: acc = direct_sum(acc, rank_one(c)); break;
            case 2: acc = direct_sum(acc, from_rows({{2, 1}, {1, 2}})); break;
            case 3: acc = direct_sum(acc, rescale(from_rows({{2, 1}, {1, -2}}), c)); break;
            default: acc = direct_sum(acc, rank_one(2 * c)); break;
        }
    }
    return acc;
}

// g A g^T for a random unimodular g built from elementary row operations.
Lattice random_basis_change(const Lattice& l, std::mt19937& rng) {
    const std::size_t n = l.rank();
    IntMatrix g = l.gram();
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int step = 0; step < 6; ++step) {
        const std::size_t i = idx(rng), j = idx(rng);
        const int c = coeff(rng);
        if (i == j || c == 0) continue;
        // row_i += c row_j, then column_i += c column_j
        for (std::size_t k = 0; k < n; ++k) g(i, k) += c * g(j, k);
        for (std::size_t k = 0; k < n; ++k) g(k, i) += c * g(k, j);
    }
    return Lattice::from_gram(std::move(g));
}

}  // namespace

TEST(Jordan, HyperbolicPlaneAtOddPrime) {
    const JordanDecomposition d = jordan_decompose(lat("U"), 3);
    ASSERT_EQ(d.blocks.size(), 1u);
    EXPECT_EQ(d.blocks[0].level, 0);
    EXPECT_EQ(d.blocks[0].rank, 2);
    EXPECT_EQ(d.blocks[0].chi, 1);
}

TEST(Jordan, TAtTwo) {
    const JordanDecomposition d = jordan_decompose(lat("U + U(2) + E8(-1)"), 2);
    ASSERT_EQ(d.blocks.size(), 2u);
    const JordanBlock& n0 = d.blocks[0];
    const JordanBlock& n1 = d.blocks[1];
    EXPECT_EQ(n0.level, 0);
    EXPECT_EQ(n0.rank, 10);
    EXPECT_TRUE(n0.two_adic->is_even);
    EXPECT_EQ(n0.two_adic->even_rank, 10);
    EXPECT_EQ(n0.chi, 1);
    EXPECT_EQ(n1.level, 1);
    EXPECT_EQ(n1.rank, 2);
    EXPECT_TRUE(n1.two_adic->is_even);
    EXPECT_EQ(n1.chi, 1);
}

TEST(Jordan, E8AtTwo) {
    const JordanDecomposition d = jordan_decompose(lat("E8(-1)"), 2);
    ASSERT_EQ(d.blocks.size(), 1u);
    EXPECT_EQ(d.blocks[0].level, 0);
    EXPECT_TRUE(d.blocks[0].two_adic->is_even);
    EXPECT_EQ(d.blocks[0].chi, 1);
}

TEST(BlockChi, Examples) {
    EXPECT_EQ(jordan_decompose(lat("gram[2,1;1,2]"), 2).blocks[0].chi, -1);
    EXPECT_EQ(jordan_decompose(lat("U"), 2).blocks[0].chi, 1);
    EXPECT_EQ(jordan_decompose(lat("<-2> + <2>"), 5).blocks[0].chi, 1);
    EXPECT_EQ(jordan_decompose(lat("<1> + <1>"), 3).blocks[0].chi, -1);
    EXPECT_EQ(jordan_decompose(lat("<1> + <1>"), 5).blocks[0].chi, 1);
    EXPECT_EQ(jordan_decompose(lat("<1> + <1> + <1>"), 5).blocks[0].chi, 0);
    // odd part only: chi of the empty even part
    EXPECT_EQ(jordan_decompose(lat("<1> + <3>"), 2).blocks[0].chi, 1);
    for (long p : {3L, 5L, 7L, 11L, 13L})
        EXPECT_EQ(jordan_decompose(lat("U"), p).blocks[0].chi, 1) << "p=" << p;
}

TEST(TwoAdic, Normalization) {
    const JordanDecomposition u = jordan_decompose(lat("U"), 2);
    EXPECT_EQ(u.blocks[0].two_adic->even_rank, 2);
    EXPECT_TRUE(u.blocks[0].two_adic->odd_units.empty());

    const JordanDecomposition three = jordan_decompose(lat("<1> + <1> + <1>"), 2);
    ASSERT_EQ(three.blocks.size(), 1u);
    const TwoAdicData& t = *three.blocks[0].two_adic;
    EXPECT_LE(t.odd_units.size(), 2u);
    EXPECT_EQ(t.even_rank + static_cast<int>(t.odd_units.size()), 3);

    const JordanDecomposition pm = jordan_decompose(lat("<1> + <-1>"), 2);
    EXPECT_EQ(pm.blocks[0].two_adic->even_rank, 0);
    EXPECT_EQ(pm.blocks[0].two_adic->odd_units, (std::vector<int>{1, 7}));
}

TEST(Jordan, RejectsComposite) { EXPECT_THROW(jordan_decompose(lat("U"), 4), PreconditionError); }

TEST(Jordan, GoodPrimesAreUnimodular) {
    const Lattice l = lat("2*U + <-30> + E8(-1)");
    for (long p : {7L, 11L, 13L, 17L}) {
        const JordanDecomposition d = jordan_decompose(l, p);
        ASSERT_EQ(d.blocks.size(), 1u);
        EXPECT_EQ(d.blocks[0].level, 0);
    }
}

TEST(Jordan, RescalingShiftsLevels) {
    for (const char* text : {"U + <-6>", "gram[2,1;1,-2] + <3>", "U + U(3) + <5>", "<1> + <2> + <12>"}) {
        const Lattice l = lat(text);
        for (long p : {2L, 3L, 5L}) {
            const JordanDecomposition a = jordan_decompose(l, p);
            const JordanDecomposition b = jordan_decompose(rescale(l, p), p);
            ASSERT_EQ(a.blocks.size(), b.blocks.size()) << text << " p=" << p;
            for (std::size_t i = 0; i < a.blocks.size(); ++i) {
                EXPECT_EQ(b.blocks[i].level, a.blocks[i].level + 1);
                EXPECT_EQ(b.blocks[i].rank, a.blocks[i].rank);
                EXPECT_EQ(b.blocks[i].chi, a.blocks[i].chi);
            }
        }
    }
}

TEST(Properties, RankAndValuationConservation) {
    std::mt19937 rng(7);
    const long primes[] = {2, 3, 5, 7};
    for (int trial = 0; trial < 1000; ++trial) {
        const Lattice l = random_lattice(rng);
        for (long p : primes) {
            const JordanDecomposition d = jordan_decompose(l, p);
            ASSERT_EQ(d.rank(), static_cast<int>(l.rank()));
            ASSERT_EQ(d.det_valuation(), valuation(l.det(), Integer(p)));
            if (p == 2)
                for (const auto& b : d.blocks) {
                    ASSERT_LE(b.two_adic->odd_units.size(), 2u);
                    ASSERT_EQ(b.two_adic->even_rank + static_cast<int>(b.two_adic->odd_units.size()), b.rank);
                }
        }
    }
}

// Densities are isometry invariants, so a change of basis must not move them.
TEST(Properties, DensityIgnoresBasis) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        const Lattice l = random_lattice(rng);
        const Lattice m = random_basis_change(l, rng);
        ASSERT_EQ(l.det(), m.det());
        for (const Integer& p : bad_primes(l))
            ASSERT_EQ(local_density(l, p).value, local_density(m, p).value) << "trial " << trial << " p=" << p;
    }
}
