#pragma once

#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace emzv {

/// Multivariate polynomial in u_1..u_n with exact integer coefficients.
///
/// Terms are keyed by exponent vectors; std::map orders them
/// lexicographically with u_1 most significant, and the last entry is the
/// leading term used by `divide_exact`.
class SparsePoly {
public:
    using Exponents = std::vector<unsigned>;
    using map_type = std::map<Exponents, Integer>;

    explicit SparsePoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static SparsePoly constant(std::size_t nvars, const Integer& c) {
        SparsePoly p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static SparsePoly monomial(const Exponents& e, const Integer& c = 1) {
        SparsePoly p(e.size());
        p.add_term(e, c);
        return p;
    }

    /// u_i + u_{i+1} + ... + u_n (0-based `first`).
    static SparsePoly tail_sum(std::size_t nvars, std::size_t first) {
        SparsePoly p(nvars);
        for (std::size_t j = first; j < nvars; ++j) {
            Exponents e(nvars, 0);
            e[j] = 1;
            p.add_term(e, 1);
        }
        return p;
    }

    void add_term(const Exponents& e, const Integer& c) {
        if (e.size() != nvars_) throw ArgumentError("exponent vector length mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
    [[nodiscard]] const map_type& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

    [[nodiscard]] Integer coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    /// True when every term has total degree `d` (the zero polynomial is
    /// homogeneous of every degree).
    [[nodiscard]] bool is_homogeneous(unsigned long d) const {
        for (const auto& [e, c] : terms_) {
            unsigned long s = 0;
            for (auto x : e) s += x;
            if (s != d) return false;
        }
        return true;
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    SparsePoly& operator*=(const Integer& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(SparsePoly a, const Integer& s) { return a *= s; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        a.check_same(b);
        SparsePoly out(a.nvars_);
        Exponents e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    [[nodiscard]] SparsePoly pow(unsigned n) const {
        SparsePoly result = constant(nvars_, 1);
        SparsePoly base = *this;
        while (n) {
            if (n & 1u) result = result * base;
            n >>= 1u;
            if (n) base = base * base;
        }
        return result;
    }

    friend bool operator==(const SparsePoly&, const SparsePoly&) = default;

    /// Quotient of exact division by `den` under lex order. Throws
    /// NonPolynomialError when the remainder is nonzero.
    [[nodiscard]] SparsePoly divide_exact(const SparsePoly& den) const {
        check_same(den);
        if (den.is_zero()) throw ArgumentError("division by the zero polynomial");
        const auto& [lead_e, lead_c] = *den.terms_.rbegin();
        SparsePoly quotient(nvars_);
        SparsePoly rem = *this;
        SparsePoly stuck(nvars_);  // terms not divisible by the leading term
        Exponents qe(nvars_);
        while (!rem.is_zero()) {
            auto it = std::prev(rem.terms_.end());
            const Exponents e = it->first;
            const Integer c = it->second;
            bool divisible = mpz_divisible_p(c.get_mpz_t(), lead_c.get_mpz_t()) != 0;
            for (std::size_t i = 0; divisible && i < nvars_; ++i) {
                if (e[i] < lead_e[i]) divisible = false;
                else qe[i] = e[i] - lead_e[i];
            }
            if (!divisible) {
                stuck.add_term(e, c);
                rem.terms_.erase(it);
                continue;
            }
            Integer qc = c / lead_c;
            quotient.add_term(qe, qc);
            rem -= monomial(qe, qc) * den;
        }
        if (!stuck.is_zero())
            throw NonPolynomialError("nonzero remainder in exact division: " + stuck.to_string());
        return quotient;
    }

    /// Evaluate at a rational point.
    [[nodiscard]] Rational evaluate(const std::vector<Rational>& point) const {
        if (point.size() != nvars_) throw ArgumentError("evaluation point has wrong dimension");
        Rational acc = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (unsigned p = 0; p < e[i]; ++p) t *= point[i];
            acc += t;
        }
        return acc;
    }

    [[nodiscard]] std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            std::string cs = c.get_str();
            if (!first) out += (c < 0) ? " - " : " + ";
            else if (c < 0) out += "-";
            first = false;
            Integer mag = abs(c);
            bool unit_coef = (mag == 1);
            bool any = false;
            if (!unit_coef) out += mag.get_str();
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!unit_coef || any) out += "*";
                out += "u" + std::to_string(i + 1);
                if (e[i] > 1) out += "^" + std::to_string(e[i]);
                any = true;
            }
            if (unit_coef && !any) out += "1";
        }
        return out;
    }

private:
    void check_same(const SparsePoly& o) const {
        if (o.nvars_ != nvars_) throw ArgumentError("polynomials over different variable sets");
    }

    std::size_t nvars_;
    map_type terms_;
};

}  // namespace emzv
