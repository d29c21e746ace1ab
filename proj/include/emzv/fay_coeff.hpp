#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "index.hpp"
#include "rational.hpp"
#include "sparse_poly.hpp"

namespace emzv {

/// numerator / denominator with the denominator a product of linear forms.
struct RatFunc {
    SparsePoly numerator;
    SparsePoly denominator;

    [[nodiscard]] SparsePoly to_polynomial() const { return numerator.divide_exact(denominator); }
};

namespace detail {

// One summand of u_1...u_r P_l: sign * u^monomial * prod_j S_j^{tail_power[j]},
// where S_j = u_j + ... + u_r (0-based j) and tail_power may be -1.
struct PTerm {
    int sign = 1;
    std::vector<unsigned> monomial;
    std::vector<long> tail_power;
};

inline std::vector<PTerm> p_terms(const Index& l) {
    const std::size_t r = l.length();
    std::vector<PTerm> terms;
    terms.reserve(r);
    // i runs over 0..r-1; the factor (u_i + ... + u_r)^{l_i - 1} is present
    // only for i >= 1, so the i = 0 summand is
    // (-u_1-...-u_r)^{l_1-1} u_1^{l_2-1} ... u_{r-1}^{l_r-1}.
    auto lm1 = [&](std::size_t j) { return static_cast<long>(l[j]) - 1; };
    for (std::size_t i = 0; i < r; ++i) {
        PTerm t;
        std::vector<long> mono(r, 1);  // the u_1...u_r prefactor
        t.tail_power.assign(r, 0);
        for (std::size_t j = 1; j < i; ++j) mono[j - 1] += lm1(j - 1);
        if (i >= 1) t.tail_power[i - 1] += lm1(i - 1);
        t.tail_power[i] += lm1(i);  // (-S_{i+1})^{l_{i+1}-1}
        t.sign = (lm1(i) % 2 == 0) ? 1 : -1;
        for (std::size_t j = i + 1; j < r; ++j) mono[j - 1] += lm1(j);
        t.monomial.assign(mono.begin(), mono.end());
        terms.push_back(std::move(t));
    }
    return terms;
}

}  // namespace detail

/// u_1...u_r P_l as a rational function over the common denominator built
/// from the linear forms u_j + ... + u_r that occur with negative exponent.
inline RatFunc p_ratfunc(const Index& l) {
    const std::size_t r = l.length();
    if (r == 0) throw PreconditionError("p_poly needs an index of length >= 1");
    auto terms = detail::p_terms(l);
    std::vector<long> den_power(r, 0);
    for (const auto& t : terms)
        for (std::size_t j = 0; j < r; ++j)
            if (t.tail_power[j] < 0) den_power[j] = std::max(den_power[j], -t.tail_power[j]);

    std::vector<SparsePoly> tails;
    tails.reserve(r);
    for (std::size_t j = 0; j < r; ++j) tails.push_back(SparsePoly::tail_sum(r, j));

    RatFunc out{SparsePoly(r), SparsePoly::constant(r, 1)};
    for (std::size_t j = 0; j < r; ++j)
        if (den_power[j] > 0) out.denominator = out.denominator * tails[j].pow(static_cast<unsigned>(den_power[j]));

    for (const auto& t : terms) {
        SparsePoly term = SparsePoly::monomial(t.monomial, t.sign);
        for (std::size_t j = 0; j < r; ++j) {
            long p = t.tail_power[j] + den_power[j];
            if (p > 0) term = term * tails[j].pow(static_cast<unsigned>(p));
        }
        out.numerator += term;
    }
    return out;
}

/// Memo for p_poly, safe for concurrent callers.
class PPolyCache {
public:
    const SparsePoly& get(const Index& l) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(l); it != cache_.end()) return it->second;
        }
        SparsePoly p = p_ratfunc(l).to_polynomial();
        std::lock_guard lock(mutex_);
        return cache_.try_emplace(l, std::move(p)).first->second;
    }

    static PPolyCache& global() {
        static PPolyCache instance;
        return instance;
    }

private:
    std::mutex mutex_;
    std::map<Index, SparsePoly> cache_;  // node-based: references stay valid
};

/// u_1...u_r P_l(u_1, ..., u_r), an integer polynomial homogeneous of degree
/// weight(l).
inline SparsePoly p_poly(const Index& l) { return PPolyCache::global().get(l); }

/// c<l|k>: coefficient of u_1^{k_1}...u_r^{k_r} in p_poly(l).
inline Rational c_coeff(const Index& l, const Index& k) {
    if (l.length() != k.length()) throw ArgumentError("c_coeff: index lengths differ");
    if (l.empty()) throw ArgumentError("c_coeff: empty index");
    if (l.weight() != k.weight()) return 0;
    const SparsePoly& p = PPolyCache::global().get(l);
    return Rational(p.coefficient(SparsePoly::Exponents(k.begin(), k.end())));
}

struct SupportTerm {
    Index l;
    Rational c;
};

/// All l with c<l|k> != 0, in lexicographic order of l.
inline std::vector<SupportTerm> enumerate_support(const Index& k) {
    if (k.empty()) throw PreconditionError("enumerate_support needs an index of length >= 1");
    std::vector<SupportTerm> out;
    for (auto& l : compositions(k.weight(), k.length())) {
        Rational c = c_coeff(l, k);
        if (c != 0) out.push_back({std::move(l), std::move(c)});
    }
    return out;
}

}  // namespace emzv
