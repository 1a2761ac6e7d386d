#include <gtest/gtest.h>

#include "hmvol/expr.hpp"

using namespace hmvol;

namespace {

std::size_t offset_of(const char* text) {
    try {
        expr::parse(text);
    } catch (const ParseError& e) {
        return e.offset();
    }
    ADD_FAILURE() << "no parse error for " << text;
    return 0;
}

}  // namespace

TEST(Parse, K3Lattice) {
    const Lattice l = expr::parse_lattice("2*U + 2*E8(-1) + <-50>");
    EXPECT_EQ(l.rank(), 21u);
    EXPECT_EQ(l.signature(), (Signature{2, 19}));
    EXPECT_EQ(l.det(), -50);
}

TEST(Parse, TLattice) {
    const Lattice l = expr::parse_lattice("U + U(2) + E8(-1)");
    EXPECT_EQ(l.rank(), 12u);
    EXPECT_EQ(l.det(), 4);
    EXPECT_TRUE(l.has_hyperbolic_summand());
}

TEST(Parse, GramLiteral) {
    const Lattice l = expr::parse_lattice("gram[2,1;1,-2]");
    EXPECT_EQ(l.det(), -5);
    EXPECT_EQ(expr::parse_lattice("gram[ 2 , 1 ; 1 , -2 ]").gram(), l.gram());
}

TEST(Parse, ParenthesesAndMultipliers) {
    const Lattice a = expr::parse_lattice("2*(U + <-2>)");
    const Lattice b = expr::parse_lattice("U + <-2> + U + <-2>");
    EXPECT_EQ(a.gram(), b.gram());
    EXPECT_EQ(expr::parse_lattice("3*U").rank(), 6u);
}

TEST(Parse, WhitespaceInsensitive) {
    EXPECT_EQ(expr::parse("2*U+<-2>"), expr::parse("  2 * U +   < -2 > "));
}

TEST(Errors, ReportOffsets) {
    EXPECT_EQ(offset_of("U +"), 3u);
    EXPECT_EQ(offset_of("U + V"), 4u);
    EXPECT_EQ(offset_of("<-2"), 3u);
    EXPECT_EQ(offset_of("U(0)"), 2u);
    EXPECT_EQ(offset_of("<0>"), 1u);
    EXPECT_THROW(expr::parse("gram[1,2;3,4]"), ParseError);
    EXPECT_THROW(expr::parse("gram[1,2;2]"), ParseError);
    EXPECT_THROW(expr::parse(""), ParseError);
    EXPECT_THROW(expr::parse("U U"), ParseError);
}

TEST(Errors, Semantic) {
    EXPECT_THROW(expr::parse_lattice("gram[1,1;1,1]"), PreconditionError);
    EXPECT_THROW(expr::parse_lattice("30*E8"), PreconditionError);
    EXPECT_THROW(expr::parse_lattice("100*U"), PreconditionError);
}

TEST(Render, RoundTrip) {
    for (const char* text : {"U", "2*U + <-2>", "U + U(2) + E8(-1)", "2*U + 2*E8(-1) + <-50>", "gram[2,1;1,-2] + U(6)",
                             "3*(U + <4>) + E8", "U(-1) + <7>"}) {
        const expr::Expr e = expr::parse(text);
        const std::string r = expr::render(e);
        EXPECT_EQ(expr::parse(r), e) << text;
        EXPECT_EQ(expr::render(expr::parse(r)), r) << text;
        EXPECT_EQ(expr::evaluate(expr::parse(r)).gram(), expr::evaluate(e).gram()) << text;
    }
    EXPECT_EQ(expr::render(expr::parse("1*U + E8(1)")), "U + E8");
}
