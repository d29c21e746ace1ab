#pragma once

#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "expression.hpp"
#include "fay_coeff.hpp"
#include "index.hpp"
#include "relations.hpp"

namespace emzv {

enum class Rule { reflect, trailing_ones, parity_split, odd_parity, odd_parity_zero_tail };

inline std::string_view to_string(Rule r) {
    switch (r) {
        case Rule::reflect: return "reflect";
        case Rule::trailing_ones: return "trailing_ones";
        case Rule::parity_split: return "parity_split";
        case Rule::odd_parity: return "odd_parity";
        case Rule::odd_parity_zero_tail: return "odd_parity_zero_tail";
    }
    return "?";
}

struct TraceStep {
    Rule rule;
    Index input;
    Identity identity;
};

struct ReductionTrace {
    std::vector<TraceStep> steps;
    Expression final;
};

struct ReductionResult {
    Expression expression;
    ReductionTrace trace;
};

struct FuelExhausted : Error {
    FuelExhausted(const std::string& what, ReductionTrace t) : Error(what), trace(std::move(t)) {}
    ReductionTrace trace;
};

/// Atoms the reduction leaves alone: admissible or {0,1}-indices.
inline bool is_terminal(const Index& k) { return k.is_admissible() || k.is_zero_one(); }

/// Lexicographic termination measure: (length, number of entries outside
/// {0,1}, distance from the right end of the rightmost such entry, whether
/// the last entry is 1).
using Measure = std::tuple<std::size_t, std::size_t, std::size_t, int>;

inline Measure measure(const Index& k) {
    std::size_t big = 0;
    std::size_t pos = 0;
    bool seen = false;
    for (std::size_t j = k.length(); j-- > 0;) {
        if (k[j] > 1) {
            ++big;
            if (!seen) pos = k.length() - 1 - j;
            seen = true;
        }
    }
    return {k.length(), big, pos, (!k.empty() && k.back() == 1) ? 1 : 0};
}

/// Drop every monomial containing I(k) with k a single odd entry, which
/// vanishes by reflection.
inline Expression drop_odd_singletons(const Expression& e) {
    Expression out;
    for (const auto& [m, c] : e.terms()) {
        bool zero = false;
        for (const auto& a : m.atoms()) zero = zero || (a.length() == 1 && a[0] % 2 == 1);
        if (!zero) out.add(m, c);
    }
    return out;
}

/// k = (1, k_2, ..., k_r) with k_r >= 2 and odd parity.
inline Identity odd_parity_identity(const Index& k) {
    const std::size_t r = k.length();
    Index kp = concat(k.prefix(r - 1), Index{0, static_cast<long long>(k.back())});
    Expression rhs;
    for (std::size_t i = 1; i <= r; ++i)
        rhs -= Expression::product(kp.prefix(i), kp.suffix_from(i), split_sign(kp, i));
    for (const auto& [s, c] : enumerate_support(k)) {
        Index s0 = concat(s, Index{0});
        for (std::size_t i = 1; i < r; ++i)
            rhs -= Expression::product(s.prefix(i), s0.suffix_from(i), c * split_sign(s0, i));
    }
    return {Expression::atom(k), drop_odd_singletons(rhs), Provenance::reduction_step};
}

/// k = (1, ..., 0) with odd parity, length >= 3. With z = (0, k):
/// I(k) = 2 I(z) - I(z_{<=r}) + sum_{i=2}^{r-1} sigma_i(z) I(z_{<=i}) I(z_{>i}).
inline Identity zero_tail_identity(const Index& k) {
    const std::size_t r = k.length();
    Index z = concat(Index{0}, k);
    Expression rhs = Expression::atom(z, 2) - Expression::atom(z.prefix(r));
    for (std::size_t i = 2; i < r; ++i) rhs += Expression::product(z.prefix(i), z.suffix_from(i), split_sign(z, i));
    return {Expression::atom(k), drop_odd_singletons(rhs), Provenance::reduction_step};
}

/// One rewriting step for a non-terminal index.
inline TraceStep reduction_step(const Index& k) {
    if (k.back() == 1 && k.front() > 1) return {Rule::reflect, k, reflection_identity(k.reversed())};
    if (k.back() == 1) return {Rule::trailing_ones, k, trailing_ones(k)};
    if (k.parity() == Parity::even) return {Rule::parity_split, k, parity_split(k)};
    if (k.back() == 0) return {Rule::odd_parity_zero_tail, k, zero_tail_identity(k)};
    return {Rule::odd_parity, k, odd_parity_identity(k)};
}

class Reducer {
public:
    explicit Reducer(long fuel = 10000) : fuel_(fuel) {
        if (fuel <= 0) throw ArgumentError("fuel must be positive");
    }

    ReductionResult run(const Index& k) {
        Expression e = expand(k);
        trace_.final = e;
        return {e, trace_};
    }

private:
    Expression expand(const Index& k) {
        if (k.empty() || is_terminal(k)) return Expression::atom(k);
        if (auto it = memo_.find(k); it != memo_.end()) return it->second;
        if (--fuel_ < 0) throw FuelExhausted("fuel exhausted at " + to_string(k), trace_);
        TraceStep step = reduction_step(k);
        const Measure mk = measure(k);
        for (const auto& a : step.identity.rhs.atoms())
            if (!is_terminal(a) && !(measure(a) < mk)) {
                trace_.steps.push_back(step);
                throw FuelExhausted("measure did not decrease: " + to_string(k) + " -> " + to_string(a), trace_);
            }
        trace_.steps.push_back(step);
        Expression out = step.identity.rhs.substitute([this](const Index& a) -> std::optional<Expression> {
            if (is_terminal(a)) return std::nullopt;
            return expand(a);
        });
        memo_.emplace(k, out);
        return out;
    }

    long fuel_;
    std::map<Index, Expression> memo_;
    ReductionTrace trace_;
};

/// Rewrite I(k) as a polynomial in admissible and {0,1}-index atoms.
inline ReductionResult reduce(const Index& k, long fuel = 10000) { return Reducer(fuel).run(k); }

/// Rebuild the final expression from I(k) and the trace identities alone.
inline Expression replay(const Index& k, const ReductionTrace& trace) {
    std::map<Index, Expression> rules;
    for (const auto& s : trace.steps) rules.emplace(s.input, s.identity.rhs);
    std::map<Index, Expression> done;
    auto rec = [&](auto&& self, const Index& a) -> Expression {
        auto r = rules.find(a);
        if (r == rules.end()) return Expression::atom(a);
        if (auto d = done.find(a); d != done.end()) return d->second;
        Expression out = r->second.substitute([&](const Index& b) -> std::optional<Expression> {
            if (rules.count(b) == 0) return std::nullopt;
            return self(self, b);
        });
        done.emplace(a, out);
        return out;
    };
    return rec(rec, k);
}

/// Optional post-pass: split even-parity {0,1} atoms of length >= 2 into
/// products of shorter ones and drop I(1).
inline Expression simplify_zero_one(const Expression& e) {
    std::map<Index, Expression> memo;
    auto rec = [&](auto&& self, const Index& a) -> std::optional<Expression> {
        if (!a.is_zero_one() || a.empty()) return std::nullopt;
        if (a.length() == 1) return a[0] == 1 ? std::optional<Expression>(Expression{}) : std::nullopt;
        if (a.parity() != Parity::even) return std::nullopt;
        if (auto it = memo.find(a); it != memo.end()) return it->second;
        Expression out = parity_split(a).rhs.substitute([&](const Index& b) { return self(self, b); });
        memo.emplace(a, out);
        return out;
    };
    return e.substitute([&](const Index& a) { return rec(rec, a); });
}

inline std::string to_string(const TraceStep& s) {
    return std::string(to_string(s.rule)) + " " + to_string(s.input) + ": " + to_string(s.identity.lhs) +
           " = " + to_string(s.identity.rhs);
}

}  // namespace emzv
