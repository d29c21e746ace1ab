#include <gtest/gtest.h>

#include "emzv/fay_coeff.hpp"

using namespace emzv;

namespace {

SparsePoly poly(std::size_t n, std::initializer_list<std::pair<std::vector<unsigned>, long>> terms) {
    SparsePoly p(n);
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

}  // namespace

TEST(SparsePoly, ArithmeticAndDivision) {
    auto a = SparsePoly::tail_sum(2, 0);  // u1 + u2
    auto b = a.pow(3);
    EXPECT_EQ(b.coefficient({2, 1}), 3);
    EXPECT_TRUE(b.is_homogeneous(3));
    EXPECT_EQ(b.divide_exact(a), a * a);
    EXPECT_THROW((b + SparsePoly::monomial({0, 1})).divide_exact(a), NonPolynomialError);
    EXPECT_EQ(b.evaluate({Rational(1), Rational(1, 2)}), Rational(27, 8));
}

// Frozen from an independent sympy expansion of the defining sum.
TEST(PPoly, Oracles) {
    EXPECT_EQ(p_poly(Index{0, 0}), poly(2, {{{0, 0}, -1}}));
    EXPECT_EQ(p_poly(Index{3}), poly(1, {{{3}, 1}}));
    EXPECT_EQ(p_poly(Index{2, 3}), poly(2, {{{1, 4}, 1}, {{2, 3}, 1}, {{3, 2}, -1}, {{4, 1}, -1}}));
    EXPECT_EQ(p_poly(Index{1, 0, 2}), poly(3, {{{0, 2, 1}, 1}, {{1, 1, 1}, -1}}));
    EXPECT_EQ(p_poly(Index{0, 2, 1}), poly(3, {{{0, 1, 2}, 1}, {{0, 2, 1}, 1}, {{1, 1, 1}, -1}}));
    EXPECT_EQ(p_poly(Index{2, 0, 0, 1}),
              poly(4, {{{0, 0, 1, 2}, -1}, {{0, 0, 2, 1}, -1}, {{0, 1, 1, 1}, -1}, {{1, 0, 1, 1}, -2}}));
    EXPECT_EQ(p_poly(Index{0, 0, 0}), poly(3, {{{0, 0, 0}, -1}}));
}

TEST(PPoly, LengthTwoClosedForm) {
    // u1 u2 (u1+u2)^{a-1} (-u2)^{b-1} + u2 u1^b (-u1-u2)^{a-1}
    for (unsigned a = 1; a <= 5; ++a)
        for (unsigned b = 1; b <= 5; ++b) {
            auto s = SparsePoly::tail_sum(2, 0);
            auto u1 = SparsePoly::monomial({1, 0}), u2 = SparsePoly::monomial({0, 1});
            auto expect = u1 * u2 * s.pow(a - 1) * (u2 * Integer(-1)).pow(b - 1) +
                          u2 * SparsePoly::monomial({b, 0}) * (s * Integer(-1)).pow(a - 1);
            EXPECT_EQ(p_poly(Index{a, b}), expect) << a << "," << b;
        }
}

TEST(PPoly, PolynomialAndHomogeneous) {
    for (std::size_t r = 1; r <= 4; ++r)
        for (unsigned w = 0; w <= 6; ++w)
            for (const auto& l : compositions(w, r)) {
                SparsePoly p;
                ASSERT_NO_THROW(p = p_poly(l)) << l;
                EXPECT_TRUE(p.is_homogeneous(w)) << l;
            }
}

TEST(PPoly, RejectsEmpty) { EXPECT_THROW(p_poly(Index{}), PreconditionError); }

TEST(CCoeff, LengthOne) {
    for (unsigned l = 0; l <= 6; ++l)
        for (unsigned k = 0; k <= 6; ++k)
            EXPECT_EQ(c_coeff(Index{l}, Index{k}), l == k ? sign_power(l + 1) : Rational(0));
}

TEST(CCoeff, ZeroFirstEntry) {
    for (unsigned w = 1; w <= 6; ++w)
        for (unsigned k1 = 0; k1 <= w; ++k1) {
            unsigned k2 = w - k1;
            // the u1*u2 prefactor kills the boundary monomials
            Rational expect = k1 >= 1 && k2 >= 1 ? sign_power(k2) : Rational(0);
            EXPECT_EQ(c_coeff(Index{0, w}, Index{k1, k2}), expect) << k1 << "," << k2;
        }
}

TEST(CCoeff, Examples) {
    EXPECT_EQ(c_coeff(Index{2, 1}, Index{1, 2}), 0);
    EXPECT_EQ(c_coeff(Index{1, 2}, Index{2, 2}), 0);  // weight mismatch
    EXPECT_THROW(c_coeff(Index{1}, Index{1, 0}), ArgumentError);
}

TEST(Support, Examples) {
    auto s3 = enumerate_support(Index{3});
    ASSERT_EQ(s3.size(), 1u);
    EXPECT_EQ(s3[0].l, Index{3});
    EXPECT_EQ(s3[0].c, 1);
    auto s0 = enumerate_support(Index{0});
    ASSERT_EQ(s0.size(), 1u);
    EXPECT_EQ(s0[0].c, -1);
    for (const auto& [l, c] : enumerate_support(Index{1, 3, 0})) {
        EXPECT_EQ(l.weight(), 4u);
        EXPECT_EQ(l.length(), 3u);
    }
}

// c<l_1..l_r | k_1..k_{r-2}, 0, k_r> = [l_r = 0] c<l_1..l_{r-1} | k_1..k_{r-2}, k_r>
TEST(CCoeff, ZeroInsertion) {
    for (std::size_t r = 2; r <= 4; ++r)
        for (unsigned w = 0; w <= 6; ++w)
            for (const auto& l : compositions(w, r))
                for (const auto& kk : compositions(w, r - 1)) {
                    Index k = concat(concat(kk.prefix(r - 2), Index{0}), Index{kk.back()});
                    Rational expect = l.back() == 0 ? c_coeff(l.prefix(r - 1), kk) : Rational(0);
                    ASSERT_EQ(c_coeff(l, k), expect) << l << " | " << k;
                }
}

// For even l_1: c<l_1,1,l_3..l_r | k> = [l_1 = k_1](c<1,l_3..l_r | k_2..k_r> - [l_3 = k_2]...[1 = k_r])
TEST(CCoeff, EvenLeadingEntry) {
    for (std::size_t r = 2; r <= 4; ++r)
        for (unsigned w = 0; w <= 6; ++w)
            for (const auto& l : compositions(w, r)) {
                if (l[0] % 2 != 0 || l[1] != 1) continue;
                for (const auto& k : compositions(w, r)) {
                    Rational expect = 0;
                    if (l[0] == k[0]) {
                        Index tail = concat(Index{1}, l.suffix_from(2));
                        expect = c_coeff(tail, k.suffix_from(1));
                        bool shifted = true;  // l_3 = k_2, ..., l_r = k_{r-1}, 1 = k_r
                        for (std::size_t j = 2; j < r; ++j) shifted = shifted && l[j] == k[j - 1];
                        shifted = shifted && k[r - 1] == 1;
                        if (shifted) expect -= 1;
                    }
                    ASSERT_EQ(c_coeff(l, k), expect) << l << " | " << k;
                }
            }
}

// One-step recursion: u1..ur P_l = u_1^{l_1} (u_2..u_r P_{l_2..l_r}) + C1 + C2 with
//   C1 = u1..ur (-S_1)^{l_1-1} u_1^{l_2-1} ... u_{r-1}^{l_r-1}
//   C2 = u1..ur (S_1^{l_1-1} - u_1^{l_1-1}) (-S_2)^{l_2-1} u_2^{l_3-1} ... u_{r-1}^{l_r-1}
// where S_j = u_j + ... + u_r. Both sides are multiplied by S_1 S_2 so that
// every piece is a polynomial.
TEST(PPoly, OneStepRecursion) {
    for (std::size_t r = 2; r <= 4; ++r)
        for (unsigned w = 0; w <= 6; ++w)
            for (const auto& l : compositions(w, r)) {
                const auto S1 = SparsePoly::tail_sum(r, 0), S2 = SparsePoly::tail_sum(r, 1);
                const auto one = SparsePoly::constant(r, 1);
                auto lm1 = [&](std::size_t j) { return static_cast<long>(l[j]) - 1; };
                // (sign * S)^{e} * S, with e >= -1
                auto times_pow = [&](const SparsePoly& S, long e, int sign) {
                    SparsePoly base = S * Integer(sign);
                    return e >= 0 ? base.pow(static_cast<unsigned>(e)) * S : one * Integer(sign);
                };
                auto mono = [&](std::size_t from) {  // u1..ur * u_from^{l_{from+1}-1} ... u_{r-1}^{l_r-1}
                    SparsePoly::Exponents e(r, 1);
                    for (std::size_t j = from; j < r; ++j) e[j - 1] += lm1(j);
                    return e;
                };
                SparsePoly tail(r);
                const SparsePoly rest = p_poly(l.suffix_from(1));
                for (const auto& [e, c] : rest.terms()) {
                    SparsePoly::Exponents ee{0};
                    ee.insert(ee.end(), e.begin(), e.end());
                    tail.add_term(ee, c);
                }
                SparsePoly::Exponents lead_e(r, 0);
                lead_e[0] = l[0];
                const SparsePoly lhs = p_poly(l) * S1 * S2;
                SparsePoly rhs = SparsePoly::monomial(lead_e) * tail * S1 * S2;
                rhs += SparsePoly::monomial(mono(1)) * times_pow(S1, lm1(0), -1) * S2;
                auto e2 = mono(2);
                SparsePoly c2 = times_pow(S1, lm1(0), 1);
                // u_1^{l_1-1} * u_1 (the prefactor's u_1 is already in e2) times S_1
                auto e2u = e2;
                e2u[0] = l[0];
                SparsePoly c2b = SparsePoly::monomial(e2u) * S1;
                e2[0] = 1;
                rhs += (SparsePoly::monomial(e2) * c2 - c2b) * times_pow(S2, lm1(1), -1);
                EXPECT_EQ(lhs, rhs) << l;
            }
}
