#include <gtest/gtest.h>

#include "hmvol/density.hpp"

using namespace hmvol;

namespace {

Lattice gram(std::vector<std::vector<Integer>> rows) { return from_rows(rows); }

struct OracleCase {
    const char* name;
    std::vector<std::vector<Integer>> rows;
    int p;
    Rational expected;
};

// Values obtained by direct counting of X^t S X = S mod p^r.
const std::vector<OracleCase>& oracle_corpus() {
    static const std::vector<OracleCase> cases = {
        {"U at 2", {{0, 1}, {1, 0}}, 2, Rational(2)},
        {"U at 3", {{0, 1}, {1, 0}}, 3, Rational(2, 3)},
        {"V at 2", {{2, 1}, {1, 2}}, 2, Rational(6)},
        {"<1,1> at 2", {{1, 0}, {0, 1}}, 2, Rational(4)},
        {"<1,3> at 2", {{1, 0}, {0, 3}}, 2, Rational(2)},
        {"<1,-1> at 2", {{1, 0}, {0, -1}}, 2, Rational(2)},
        {"<1,5> at 2", {{1, 0}, {0, 5}}, 2, Rational(4)},
        {"<1,2> at 2", {{1, 0}, {0, 2}}, 2, Rational(8)},
        {"U(2) at 2", {{0, 2}, {2, 0}}, 2, Rational(16)},
        {"<1,4> at 2", {{1, 0}, {0, 4}}, 2, Rational(16)},
        {"<3,12> at 2", {{3, 0}, {0, 12}}, 2, Rational(16)},
        {"<2,-6> at 2", {{2, 0}, {0, -6}}, 2, Rational(32)},
        {"[[2,1],[1,-2]] at 2", {{2, 1}, {1, -2}}, 2, Rational(6)},
    };
    return cases;
}

}  // namespace

TEST(PSeries, SmallValues) {
    EXPECT_EQ(p_series(2, 0), Rational(1));
    EXPECT_EQ(p_series(2, 1), Rational(3, 4));
    EXPECT_EQ(p_series(3, 2), Rational(8, 9) * Rational(80, 81));
    EXPECT_THROW(p_series(2, -1), PreconditionError);
}

TEST(Oracle, CorpusAgainstRecordedCounts) {
    for (const auto& c : oracle_corpus()) {
        const auto run = stabilized_oracle(gram(c.rows), c.p);
        EXPECT_TRUE(run.stable) << c.name;
        EXPECT_EQ(run.value, c.expected) << c.name;
    }
}

TEST(Density, CorpusAgainstFormula) {
    for (const auto& c : oracle_corpus()) {
        const auto d = local_density(gram(c.rows), c.p);
        EXPECT_EQ(d.value, c.expected) << c.name;
        EXPECT_EQ(d.recombine(), d.value) << c.name;
    }
}

TEST(Density, RankThreeAgreesWithOracle) {
    const std::vector<std::pair<std::vector<std::vector<Integer>>, int>> cases = {
        {{{0, 1, 0}, {1, 0, 0}, {0, 0, -2}}, 2},
        {{{0, 1, 0}, {1, 0, 0}, {0, 0, -2}}, 3},
        {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 2},
        {{{2, 1, 0}, {1, 2, 0}, {0, 0, 2}}, 2},
        {{{1, 0, 0}, {0, 3, 0}, {0, 0, 5}}, 2},
        {{{0, 1, 0}, {1, 0, 0}, {0, 0, -6}}, 3},
        {{{2, 1, 0}, {1, 2, 0}, {0, 0, 3}}, 3},
        {{{1, 0}, {0, -5}}, 5},
        {{{2, 1}, {1, -12}}, 5},
    };
    for (const auto& [rows, p] : cases) {
        const Lattice l = gram(rows);
        const auto run = stabilized_oracle(l, p);
        ASSERT_TRUE(run.stable) << "p=" << p;
        EXPECT_EQ(local_density(l, p).value, run.value) << "p=" << p << " det=" << l.det();
    }
}

TEST(Oracle, DiagonalConventionDiffersByPowerOfTwo) {
    const Lattice l = gram({{1, 0}, {0, 3}});
    const auto a = stabilized_oracle(l, 2, CountingConvention::Entrywise);
    const auto b = stabilized_oracle(l, 2, CountingConvention::DiagonalDoubled);
    ASSERT_TRUE(a.stable && b.stable);
    EXPECT_EQ(b.value * 4, a.value);
}

TEST(Oracle, GuardRejectsLargeRank) {
    const Lattice l = gram({{2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}});
    EXPECT_THROW(siegel_count_oracle(l, 2, 1), GuardError);
    const Lattice three = gram({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    EXPECT_THROW(siegel_count_oracle(three, 2, 12), GuardError);
    EXPECT_THROW(siegel_count_oracle(three, 4, 1), PreconditionError);
}

TEST(Density, BadPrimes) {
    const Lattice l = gram({{0, 1, 0}, {1, 0, 0}, {0, 0, -30}});
    EXPECT_EQ(bad_primes(l), (std::vector<Integer>{2, 3, 5}));
}
