#pragma once

#include <map>
#include <utility>
#include <vector>

#include "index.hpp"
#include "rational.hpp"

namespace emzv {

/// A Q-linear combination of words e_{k_1}...e_{k_r}, each keyed by its Index.
/// Zero coefficients are never stored, so equality is map equality.
class WordCombo {
public:
    using map_type = std::map<Index, Rational>;

    WordCombo() = default;

    static WordCombo word(const Index& w, const Rational& c = 1) {
        WordCombo out;
        out.add(w, c);
        return out;
    }

    /// The unit word (empty index) with coefficient 1.
    static WordCombo unit() { return word(Index{}); }

    void add(const Index& w, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    [[nodiscard]] const map_type& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    [[nodiscard]] Rational coefficient(const Index& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    WordCombo& operator+=(const WordCombo& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    WordCombo& operator-=(const WordCombo& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    WordCombo& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_) c *= s;
        return *this;
    }

    friend WordCombo operator+(WordCombo a, const WordCombo& b) { return a += b; }
    friend WordCombo operator-(WordCombo a, const WordCombo& b) { return a -= b; }
    friend WordCombo operator*(WordCombo a, const Rational& s) { return a *= s; }
    friend WordCombo operator*(const Rational& s, WordCombo a) { return a *= s; }

    friend bool operator==(const WordCombo&, const WordCombo&) = default;

    /// Sum of all coefficients.
    [[nodiscard]] Rational mass() const {
        Rational m = 0;
        for (const auto& [w, c] : terms_) m += c;
        return m;
    }

private:
    map_type terms_;
};

namespace detail {

inline void shuffle_into(const Index& v, std::size_t i, const Index& w, std::size_t j,
                         std::vector<Index::value_type>& buf, std::map<Index, Rational>& out) {
    if (i == v.length() && j == w.length()) {
        auto [it, inserted] = out.try_emplace(Index(buf), 1);
        if (!inserted) it->second += 1;
        return;
    }
    if (i < v.length()) {
        buf.push_back(v[i]);
        shuffle_into(v, i + 1, w, j, buf, out);
        buf.pop_back();
    }
    if (j < w.length()) {
        buf.push_back(w[j]);
        shuffle_into(v, i, w, j + 1, buf, out);
        buf.pop_back();
    }
}

}  // namespace detail

/// Shuffle product of two words: the sum over all interleavings that keep
/// the internal order of each factor.
inline WordCombo shuffle(const Index& v, const Index& w) {
    std::map<Index, Rational> acc;
    std::vector<Index::value_type> buf;
    buf.reserve(v.length() + w.length());
    detail::shuffle_into(v, 0, w, 0, buf, acc);
    WordCombo out;
    for (const auto& [word, c] : acc) out.add(word, c);
    return out;
}

/// Bilinear extension of `shuffle`.
inline WordCombo shuffle_combo(const WordCombo& a, const WordCombo& b) {
    WordCombo out;
    for (const auto& [v, cv] : a.terms())
        for (const auto& [w, cw] : b.terms()) out += shuffle(v, w) * (cv * cw);
    return out;
}

/// S(e_{i_1}...e_{i_n}) = (-1)^n e_{i_n}...e_{i_1}.
inline std::pair<Rational, Index> antipode(const Index& w) {
    return {sign_power(w.length()), w.reversed()};
}

inline WordCombo antipode(const WordCombo& a) {
    WordCombo out;
    for (const auto& [w, c] : a.terms()) {
        auto [s, r] = antipode(w);
        out.add(r, s * c);
    }
    return out;
}

/// Deconcatenation: all (prefix, suffix) splits, prefix length 0..n.
inline std::vector<std::pair<Index, Index>> coproduct(const Index& w) {
    std::vector<std::pair<Index, Index>> out;
    out.reserve(w.length() + 1);
    for (std::size_t j = 0; j <= w.length(); ++j) out.emplace_back(w.prefix(j), w.suffix_from(j));
    return out;
}

/// Sign in I^A(reverse k) = (-1)^{weight k} I^A(k).
inline Rational reflection_sign(const Index& k) { return sign_power(k.weight()); }

/// Append a letter to every word of a combination.
inline WordCombo append_letter(const WordCombo& a, Index::value_type letter) {
    WordCombo out;
    for (const auto& [w, c] : a.terms()) out.add(concat(w, Index{static_cast<long long>(letter)}), c);
    return out;
}

}  // namespace emzv
