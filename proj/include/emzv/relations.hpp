#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "expression.hpp"
#include "fay_coeff.hpp"
#include "index.hpp"
#include "word_algebra.hpp"

namespace emzv {

enum class Provenance { shuffle, reflection, fay, prop_mat, parity_split, trailing_ones, reduction_step };

inline std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::shuffle: return "shuffle";
        case Provenance::reflection: return "reflection";
        case Provenance::fay: return "fay";
        case Provenance::prop_mat: return "prop_mat";
        case Provenance::parity_split: return "parity_split";
        case Provenance::trailing_ones: return "trailing_ones";
        case Provenance::reduction_step: return "reduction_step";
    }
    return "?";
}

/// lhs = rhs among formal eMZV symbols.
struct Identity {
    Expression lhs;
    Expression rhs;
    Provenance provenance = Provenance::reduction_step;

    /// lhs - rhs, the object asserted to vanish.
    [[nodiscard]] Expression residual() const { return lhs - rhs; }

    [[nodiscard]] bool is_homogeneous() const {
        auto w = lhs.homogeneous_weight();
        if (!w) return false;
        if (lhs.is_zero()) return rhs.homogeneous_weight().has_value();
        auto v = rhs.homogeneous_weight(*w);
        return v && *v == *w;
    }
};

inline Expression from_words(const WordCombo& c) {
    Expression e;
    for (const auto& [w, coef] : c.terms()) e.add(Monomial::atom(w), coef);
    return e;
}

/// (-1)^{k_{i+1}+...+k_r + r-i}; `i` counts the prefix length.
inline Rational split_sign(const Index& k, std::size_t i) {
    std::uint64_t s = k.length() - i;
    for (std::size_t j = i; j < k.length(); ++j) s += k[j];
    return sign_power(s);
}

/// I(v) I(w) = sum of I over the shuffles of v and w.
inline Identity shuffle_identity(const Index& v, const Index& w) {
    return {Expression::product(v, w), from_words(shuffle(v, w)), Provenance::shuffle};
}

/// I(reverse k) = (-1)^{weight k} I(k).
inline Identity reflection_identity(const Index& k) {
    return {Expression::atom(k.reversed()), Expression::atom(k, reflection_sign(k)), Provenance::reflection};
}

namespace detail {

// The zeta-weighted part of the Fay relation:
// sum_{i=2}^r (-1)^i d_{1,k_1}...d_{1,k_{i-1}} d_{1,k_r} zeta(i) I(k_i..k_{r-1}).
// Returns the surviving (i, atom) pairs.
inline std::vector<std::pair<std::size_t, Index>> fay_zeta_terms(const Index& k) {
    std::vector<std::pair<std::size_t, Index>> out;
    const std::size_t r = k.length();
    if (r < 2 || k.back() != 1) return out;
    for (std::size_t i = 2; i <= r; ++i) {
        bool ones = true;
        for (std::size_t j = 0; j + 1 < i; ++j) ones = ones && k[j] == 1;
        if (ones) out.emplace_back(i, k.slice(i - 1, r - 1));
    }
    return out;
}

inline Expression fay_sum(const Index& k) {
    Expression rhs;
    for (const auto& [l, c] : enumerate_support(k)) rhs.add(Monomial::atom(l), -c);
    return rhs;
}

}  // namespace detail

/// I(k) = -sum_l c<l|k> I(l), valid for r = 1 or k_r != 1.
inline Identity fay_identity(const Index& k) {
    if (k.empty()) throw PreconditionError("fay_identity needs a nonempty index");
    if (k.length() > 1 && k.back() == 1)
        throw PreconditionError("fay_identity needs last entry != 1, got " + to_string(k));
    if (!detail::fay_zeta_terms(k).empty()) throw Error("fay_identity: zeta terms survived the guard");
    return {Expression::atom(k), detail::fay_sum(k), Provenance::fay};
}

/// The Fay sum for any k whose zeta terms vanish, including length-2
/// indices ending in 1 other than (1,1). Throws PreconditionError when the
/// zeta part is nonzero, since Expression carries no zeta constants.
inline Identity fay_formal(const Index& k) {
    if (k.empty()) throw PreconditionError("fay_formal needs a nonempty index");
    if (!detail::fay_zeta_terms(k).empty())
        throw PreconditionError("fay_formal: zeta terms present for " + to_string(k));
    return {Expression::atom(k), detail::fay_sum(k), Provenance::fay};
}

/// C(a,b) with C(-1,-1) = 1 and zero outside 0 <= b <= a.
inline Integer binomial_ext(long a, long b) {
    if (a == -1 && b == -1) return 1;
    if (b < 0 || a < 0 || a < b) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return out;
}

/// The explicit length-2 Fay formula for I(r,s).
inline Identity prop_mat_identity(long r, long s) {
    if (r < 0 || s < 0) throw ArgumentError("prop_mat_identity needs r, s >= 0");
    if (r == 1 && s == 1) throw PreconditionError("prop_mat_identity is undefined at (1,1)");
    Expression rhs;
    rhs.add(Monomial::atom(Index{0, r + s}), -sign_power(static_cast<std::uint64_t>(s)));
    for (long n = 0; n <= s; ++n)
        rhs.add(Monomial::atom(Index{r + n, s - n}),
                sign_power(static_cast<std::uint64_t>(s - n)) * Rational(binomial_ext(r - 1 + n, r - 1)));
    for (long n = 0; n <= r; ++n)
        rhs.add(Monomial::atom(Index{s + n, r - n}),
                sign_power(static_cast<std::uint64_t>(s + n)) * Rational(binomial_ext(s - 1 + n, s - 1)));
    return {Expression::atom(Index{r, s}), rhs, Provenance::prop_mat};
}

/// Even parity: I(k) = -1/2 sum_{i=1}^{r-1} sigma_i I(k_{<=i}) I(k_{>i}).
inline Identity parity_split(const Index& k) {
    if (k.empty()) throw PreconditionError("parity_split needs a nonempty index");
    if (k.parity() != Parity::even) throw PreconditionError("parity_split needs even parity, got " + to_string(k));
    if (k.length() == 1) throw DegenerateError("parity_split is vacuous at length 1: " + to_string(k));
    Expression rhs;
    for (std::size_t i = 1; i < k.length(); ++i)
        rhs += Expression::product(k.prefix(i), k.suffix_from(i), Rational(-1, 2) * split_sign(k, i));
    return {Expression::atom(k), rhs, Provenance::parity_split};
}

/// I(k_1..k_n, 1^m) = ((-1)^m / m!) I((1 sh ... sh 1 sh (k_1..k_{n-1})), k_n).
inline Identity trailing_ones(const Index& k) {
    std::size_t m = 0;
    while (m < k.length() && k[k.length() - 1 - m] == 1) ++m;
    if (m == 0) throw PreconditionError("trailing_ones needs a trailing 1, got " + to_string(k));
    if (m == k.length()) throw PreconditionError("trailing_ones needs an entry != 1, got " + to_string(k));
    const std::size_t n = k.length() - m;
    WordCombo acc = WordCombo::word(k.prefix(n - 1));
    for (std::size_t j = 0; j < m; ++j) acc = shuffle_combo(acc, WordCombo::word(Index{1}));
    Expression rhs = from_words(append_letter(acc, k[n - 1]));
    rhs *= sign_power(m) / Rational(factorial(static_cast<unsigned>(m)));
    return {Expression::atom(k), rhs, Provenance::trailing_ones};
}

}  // namespace emzv
