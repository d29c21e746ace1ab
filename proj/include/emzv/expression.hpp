#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "index.hpp"
#include "rational.hpp"

namespace emzv {

/// A product of atoms I^A(k), stored as a sorted multiset of indices. The
/// empty index stands for I^A() = 1 and is never stored, so the empty
/// monomial is the unit.
class Monomial {
public:
    Monomial() = default;

    explicit Monomial(std::vector<Index> atoms) {
        for (auto& a : atoms)
            if (!a.empty()) atoms_.push_back(std::move(a));
        std::sort(atoms_.begin(), atoms_.end());
    }

    static Monomial atom(const Index& k) { return Monomial(std::vector<Index>{k}); }

    [[nodiscard]] const std::vector<Index>& atoms() const noexcept { return atoms_; }
    [[nodiscard]] bool is_unit() const noexcept { return atoms_.empty(); }
    [[nodiscard]] std::size_t degree() const noexcept { return atoms_.size(); }

    [[nodiscard]] std::uint64_t weight() const noexcept {
        std::uint64_t w = 0;
        for (const auto& a : atoms_) w += a.weight();
        return w;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial out;
        out.atoms_.reserve(a.atoms_.size() + b.atoms_.size());
        std::merge(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(), b.atoms_.end(),
                   std::back_inserter(out.atoms_));
        return out;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.atoms_.size() <=> b.atoms_.size(); c != 0) return c;
        return a.atoms_ <=> b.atoms_;
    }

private:
    std::vector<Index> atoms_;
};

/// Polynomial with rational coefficients in the symbols I^A(k).
class Expression {
public:
    using map_type = std::map<Monomial, Rational>;

    Expression() = default;

    static Expression constant(const Rational& c) {
        Expression e;
        e.add(Monomial{}, c);
        return e;
    }

    static Expression atom(const Index& k, const Rational& c = 1) {
        Expression e;
        e.add(Monomial::atom(k), c);
        return e;
    }

    /// c * I(a) * I(b); either factor may be the empty index.
    static Expression product(const Index& a, const Index& b, const Rational& c = 1) {
        Expression e;
        e.add(Monomial(std::vector<Index>{a, b}), c);
        return e;
    }

    void add(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    [[nodiscard]] const map_type& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    [[nodiscard]] Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Expression& operator+=(const Expression& o) {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    Expression& operator-=(const Expression& o) {
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    Expression& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Expression operator+(Expression a, const Expression& b) { return a += b; }
    friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
    friend Expression operator-(Expression a) { return a *= Rational(-1); }
    friend Expression operator*(Expression a, const Rational& s) { return a *= s; }
    friend Expression operator*(const Rational& s, Expression a) { return a *= s; }

    friend Expression operator*(const Expression& a, const Expression& b) {
        Expression out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add(ma * mb, ca * cb);
        return out;
    }

    friend bool operator==(const Expression&, const Expression&) = default;

    /// Distinct atoms in canonical order.
    [[nodiscard]] std::set<Index> atoms() const {
        std::set<Index> out;
        for (const auto& [m, c] : terms_)
            for (const auto& a : m.atoms()) out.insert(a);
        return out;
    }

    /// Replace every atom by `f(atom)`; atoms for which `f` returns nullopt
    /// are kept.
    [[nodiscard]] Expression substitute(const std::function<std::optional<Expression>(const Index&)>& f) const {
        Expression out;
        for (const auto& [m, c] : terms_) {
            Expression prod = constant(c);
            for (const auto& a : m.atoms()) {
                auto r = f(a);
                prod = prod * (r ? *r : atom(a));
            }
            out += prod;
        }
        return out;
    }

    /// Weight shared by all monomials, or nullopt when they disagree. The
    /// zero expression is homogeneous of any weight; `fallback` is returned.
    [[nodiscard]] std::optional<std::uint64_t> homogeneous_weight(std::uint64_t fallback = 0) const {
        if (terms_.empty()) return fallback;
        std::uint64_t w = terms_.begin()->first.weight();
        for (const auto& [m, c] : terms_)
            if (m.weight() != w) return std::nullopt;
        return w;
    }

private:
    map_type terms_;
};

inline std::string to_string(const Monomial& m) {
    if (m.is_unit()) return "1";
    std::string out;
    for (std::size_t i = 0; i < m.atoms().size(); ++i) {
        if (i) out += '*';
        out += "I(" + to_string(m.atoms()[i]) + ")";
    }
    return out;
}

/// "-1/2 * I(1,2)*I(0) + 3 * 1"; the zero expression prints as "0".
inline std::string to_string(const Expression& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : e.terms()) {
        if (!first) out += " + ";
        first = false;
        out += to_string(c) + " * " + to_string(m);
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Expression& e) { return os << to_string(e); }

inline nlohmann::json to_json(const Expression& e) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : e.terms()) {
        nlohmann::json atoms = nlohmann::json::array();
        for (const auto& a : m.atoms()) atoms.push_back(a.entries());
        terms.push_back({{"coef", to_string(c)}, {"atoms", std::move(atoms)}});
    }
    return {{"terms", std::move(terms)}};
}

inline Expression expression_from_json(const nlohmann::json& j) {
    try {
        Expression e;
        for (const auto& t : j.at("terms")) {
            std::vector<Index> atoms;
            for (const auto& a : t.at("atoms")) {
                Index k;
                for (const auto& x : a) k.push_back(x.get<long long>());
                atoms.push_back(std::move(k));
            }
            e.add(Monomial(std::move(atoms)), parse_rational(t.at("coef").get<std::string>()));
        }
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed expression JSON: ") + ex.what());
    }
}

}  // namespace emzv
