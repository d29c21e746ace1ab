#include <gtest/gtest.h>

#include "emzv/relations.hpp"

using namespace emzv;

namespace {

Expression atoms(std::initializer_list<std::pair<Index, Rational>> terms) {
    Expression e;
    for (const auto& [k, c] : terms) e += Expression::atom(k, c);
    return e;
}

}  // namespace

TEST(Expression, TextAndJson) {
    Expression e = Expression::product(Index{1, 2}, Index{0}, Rational(-1, 2)) + Expression::constant(3);
    EXPECT_EQ(to_string(e), "3 * 1 + -1/2 * I(0)*I(1,2)");
    EXPECT_EQ(to_string(Expression{}), "0");
    auto j = to_json(e);
    EXPECT_EQ(j["terms"][1]["coef"], "-1/2");
    EXPECT_EQ(expression_from_json(j), e);
    EXPECT_THROW(expression_from_json(nlohmann::json::parse(R"({"terms":[{"coef":"x","atoms":[]}]})")), ParseError);
}

TEST(Expression, EmptyAtomIsUnit) {
    EXPECT_EQ(Expression::atom(Index{}), Expression::constant(1));
    EXPECT_EQ(Expression::product(Index{}, Index{2}), Expression::atom(Index{2}));
    Expression a = Expression::atom(Index{1}) + Expression::atom(Index{0});
    EXPECT_EQ(a * a, Expression::product(Index{1}, Index{1}) + Expression::product(Index{0}, Index{1}, 2) +
                         Expression::product(Index{0}, Index{0}));
}

TEST(Shuffle, Identities) {
    auto id = shuffle_identity(Index{0}, Index{2});
    EXPECT_EQ(id.lhs, Expression::product(Index{0}, Index{2}));
    EXPECT_EQ(id.rhs, atoms({{Index{0, 2}, 1}, {Index{2, 0}, 1}}));
    EXPECT_EQ(shuffle_identity(Index{}, Index{3, 1}).lhs, Expression::atom(Index{3, 1}));
    EXPECT_EQ(shuffle_identity(Index{1}, Index{1}).rhs, Expression::atom(Index{1, 1}, 2));
}

TEST(Reflection, Identities) {
    auto id = reflection_identity(Index{3, 2});
    EXPECT_EQ(id.lhs, Expression::atom(Index{2, 3}));
    EXPECT_EQ(id.rhs, Expression::atom(Index{3, 2}, -1));
    EXPECT_EQ(reflection_identity(Index{3}).rhs, Expression::atom(Index{3}, -1));
    auto z = reflection_identity(Index{0, 0, 0});
    EXPECT_EQ(z.lhs, z.rhs);
}

// Frozen from an independent sympy expansion.
TEST(Fay, Oracles) {
    EXPECT_EQ(fay_identity(Index{2, 3}).rhs,
              atoms({{Index{0, 5}, 1}, {Index{2, 3}, -1}, {Index{3, 2}, 1}, {Index{5, 0}, -2}}));
    EXPECT_EQ(fay_identity(Index{1, 0, 2}).rhs, atoms({{Index{0, 3, 0}, -1}, {Index{1, 2, 0}, 1}, {Index{3, 0, 0}, -1}}));
    EXPECT_EQ(fay_identity(Index{0, 0, 2}).rhs, atoms({{Index{2, 0, 0}, 1}}));
    EXPECT_EQ(fay_identity(Index{3}).rhs, Expression::atom(Index{3}, -1));
    EXPECT_EQ(fay_identity(Index{0}).rhs, Expression::atom(Index{0}));
    EXPECT_EQ(fay_identity(Index{4}).rhs, Expression::atom(Index{4}));
}

TEST(Fay, Preconditions) {
    EXPECT_THROW(fay_identity(Index{2, 1}), PreconditionError);
    EXPECT_NO_THROW(fay_identity(Index{1}));
    EXPECT_NO_THROW(fay_formal(Index{2, 1}));
    EXPECT_THROW(fay_formal(Index{1, 1}), PreconditionError);
    EXPECT_THROW(fay_formal(Index{1, 1, 0, 1}), PreconditionError);
}

TEST(PropMat, AgreesWithFay) {
    for (long w = 0; w <= 8; ++w)
        for (long r = 0; r <= w; ++r) {
            long s = w - r;
            if (r == 1 && s == 1) continue;
            EXPECT_EQ(fay_formal(Index{r, s}).rhs, prop_mat_identity(r, s).rhs) << r << "," << s;
            if (s != 1) EXPECT_EQ(fay_identity(Index{r, s}).rhs, prop_mat_identity(r, s).rhs);
        }
    EXPECT_THROW(prop_mat_identity(1, 1), PreconditionError);
}

TEST(Binomial, Conventions) {
    EXPECT_EQ(binomial_ext(-1, -1), 1);
    EXPECT_EQ(binomial_ext(-1, 0), 0);
    EXPECT_EQ(binomial_ext(3, 4), 0);
    EXPECT_EQ(binomial_ext(4, 2), 6);
}

TEST(ParitySplit, Examples) {
    EXPECT_EQ(parity_split(Index{0, 2}).rhs, Expression::product(Index{0}, Index{2}, Rational(1, 2)));
    // full antipode identity: 0 = 2 I(1,1) + I(1)^2
    EXPECT_EQ(parity_split(Index{1, 1}).rhs, Expression::product(Index{1}, Index{1}, Rational(-1, 2)));
    EXPECT_THROW(parity_split(Index{3}), DegenerateError);
    EXPECT_THROW(parity_split(Index{2}), PreconditionError);
    EXPECT_THROW(parity_split(Index{1, 2}), PreconditionError);
}

TEST(ParitySplit, MatchesShuffleAndReflection) {
    // I(0)I(2) = I(0,2) + I(2,0) = 2 I(0,2)
    auto sh = shuffle_identity(Index{0}, Index{2});
    auto ref = reflection_identity(Index{0, 2});  // I(2,0) = I(0,2)
    Expression twice = sh.rhs.substitute([&](const Index& k) -> std::optional<Expression> {
        if (k == Index{2, 0}) return ref.rhs;
        return std::nullopt;
    });
    EXPECT_EQ(twice, Expression::atom(Index{0, 2}, 2));
    EXPECT_EQ(parity_split(Index{0, 2}).rhs * Rational(2), sh.lhs);
}

TEST(TrailingOnes, Examples) {
    EXPECT_EQ(trailing_ones(Index{2, 1}).rhs, Expression::atom(Index{1, 2}, -1));
    EXPECT_EQ(trailing_ones(Index{0, 1, 1}).rhs, Expression::atom(Index{1, 1, 0}));
    EXPECT_EQ(trailing_ones(Index{3, 1}).rhs, Expression::atom(Index{1, 3}, -1));
    EXPECT_THROW(trailing_ones(Index{1, 1}), PreconditionError);
    EXPECT_THROW(trailing_ones(Index{1, 2}), PreconditionError);
    const Identity id = trailing_ones(Index{2, 3, 0, 1, 1});
    for (const auto& [m, c] : id.rhs.terms()) {
        ASSERT_EQ(m.atoms().size(), 1u);
        EXPECT_EQ(m.atoms()[0].back(), 0u);
        EXPECT_EQ(m.atoms()[0].length(), 5u);
    }
}

TEST(Identities, WeightHomogeneous) {
    for (const auto& k : indices_up_to(5, 3)) {
        EXPECT_TRUE(reflection_identity(k).is_homogeneous());
        if (k.length() == 1 || k.back() != 1) EXPECT_TRUE(fay_identity(k).is_homogeneous()) << k;
        if (k.length() >= 2 && k.parity() == Parity::even) EXPECT_TRUE(parity_split(k).is_homogeneous()) << k;
    }
}
