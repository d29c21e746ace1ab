#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "expression.hpp"
#include "index.hpp"
#include "numerics/kronecker.hpp"
#include "numerics/values.hpp"
#include "reduction.hpp"
#include "relations.hpp"

namespace emzv {

/// Runs fn(0..n-1) on up to `threads` workers. The first exception thrown by
/// any call is rethrown after all workers finish.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct VerifyReport {
    std::string family;
    std::string instance;
    std::string tau;  // empty for exact checks
    Complex lhs;
    Complex rhs;
    double residual = 0;
    double tolerance = 0;
    bool pass = false;
    double wall_time = 0;
    std::string error;  // set when the instance threw
};

inline nlohmann::json to_json(const VerifyReport& r) {
    nlohmann::json j{{"family", r.family},
                     {"instance", r.instance},
                     {"tau", r.tau.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.tau)},
                     {"lhs", {{"re", r.lhs.real()}, {"im", r.lhs.imag()}}},
                     {"rhs", {{"re", r.rhs.real()}, {"im", r.rhs.imag()}}},
                     {"residual", r.residual},
                     {"tol", r.tolerance},
                     {"pass", r.pass},
                     {"wall_time", r.wall_time}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

inline VerifyReport report_from_json(const nlohmann::json& j) {
    VerifyReport r;
    r.family = j.at("family").get<std::string>();
    r.instance = j.at("instance").get<std::string>();
    r.tau = j.at("tau").is_null() ? "" : j.at("tau").get<std::string>();
    r.lhs = {j.at("lhs").at("re").get<double>(), j.at("lhs").at("im").get<double>()};
    r.rhs = {j.at("rhs").at("re").get<double>(), j.at("rhs").at("im").get<double>()};
    r.residual = j.at("residual").get<double>();
    r.tolerance = j.at("tol").get<double>();
    r.pass = j.at("pass").get<bool>();
    r.wall_time = j.at("wall_time").get<double>();
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    return r;
}

namespace detail {

template <class F>
VerifyReport timed(std::string family, std::string instance, std::string tau, double tol, F&& body) {
    VerifyReport r{std::move(family), std::move(instance), std::move(tau)};
    r.tolerance = tol;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
        r.pass = r.residual <= tol;
    } catch (const std::exception& e) {
        r.error = e.what();
        r.pass = false;
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline VerifyReport numeric_identity(const std::string& family, const std::string& instance, const Identity& id,
                                     Evaluator& ev, double tol) {
    return timed(family, instance, to_string(ev.tau()), tol, [&](VerifyReport& r) {
        r.lhs = ev.eval_expression(id.lhs).value;
        r.rhs = ev.eval_expression(id.rhs).value;
        r.residual = std::abs(r.lhs - r.rhs);
    });
}

}  // namespace detail

/// Compares the direct value of I(k) with the value of its reduction.
inline VerifyReport verify_reduction(const Index& k, Evaluator& ev, double tol, long fuel = 10000) {
    return detail::timed("reduction", to_string(k), to_string(ev.tau()), tol, [&](VerifyReport& r) {
        auto red = reduce(k, fuel);
        r.lhs = ev.value(k).value;
        r.rhs = ev.eval_expression(red.expression).value;
        r.residual = std::abs(r.lhs - r.rhs);
    });
}

struct SweepOptions {
    std::uint64_t max_weight = 4;
    std::size_t max_length = 3;
    double tolerance = 1e-6;
    unsigned threads = 1;
    long fuel = 10000;
    std::uint64_t seed = 20240531;
    int kronecker_points = 20;
};

inline const std::vector<std::string>& families() {
    static const std::vector<std::string> f{"shuffle",       "reflection", "fay",       "prop-mat",
                                            "parity",        "trailing-ones", "reduction", "kronecker"};
    return f;
}

namespace detail {

inline std::vector<std::pair<Index, Index>> shuffle_pairs(const SweepOptions& o) {
    std::vector<std::pair<Index, Index>> out;
    auto all = indices_up_to(o.max_weight, o.max_length > 0 ? o.max_length - 1 : 0);
    for (const auto& v : all)
        for (const auto& w : all)
            if (v.length() + w.length() <= o.max_length && v.weight() + w.weight() <= o.max_weight && !(w < v))
                out.emplace_back(v, w);
    return out;
}

inline std::vector<VerifyReport> kronecker_sweep(const Tau& tau, const SweepOptions& o) {
    const double tol = std::min(o.tolerance, 1e-9);
    const std::string ts = to_string(tau);
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> re(0.05, 0.95), im(-0.3, 0.3);
    auto point = [&] { return Complex(re(rng), im(rng) * tau.imag()); };
    auto regular = [&](std::initializer_list<Complex> zs) {
        for (auto z : zs)
            if (lattice_distance(z, tau) < 0.05) return false;
        return true;
    };
    std::vector<VerifyReport> out;
    const Complex two_pi_i(0, 2 * std::numbers::pi);
    for (int p = 0; p < o.kronecker_points; ++p) {
        Complex a1, a2, z1, z2;
        do {
            a1 = point(), a2 = point(), z1 = point(), z2 = point();
        } while (!regular({a1, a2, z1, z2, a1 + a2, z1 - z2, z1 + a1, z2 + a2, z1 + a1 + a2, z2 + a1 + a2,
                           z2 - z1 + a2, z1 - z2 + a1}));
        const std::string inst = "point " + std::to_string(p);
        auto rel = [](Complex a, Complex b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); };
        out.push_back(timed("kronecker", inst + " antisymmetry", ts, tol, [&](VerifyReport& r) {
            r.lhs = kronecker_F(a1, z1, tau);
            r.rhs = -kronecker_F(-a1, -z1, tau);
            r.residual = rel(r.lhs, r.rhs);
        }));
        out.push_back(timed("kronecker", inst + " periodicity", ts, tol, [&](VerifyReport& r) {
            r.lhs = kronecker_F(a1, z1 + 1.0, tau);
            r.rhs = kronecker_F(a1, z1, tau);
            r.residual = rel(r.lhs, r.rhs);
        }));
        out.push_back(timed("kronecker", inst + " quasi-periodicity", ts, tol, [&](VerifyReport& r) {
            r.lhs = kronecker_F(a1, z1 + tau.value(), tau);
            r.rhs = std::exp(-two_pi_i * a1) * kronecker_F(a1, z1, tau);
            r.residual = rel(r.lhs, r.rhs);
        }));
        out.push_back(timed("kronecker", inst + " fay", ts, tol, [&](VerifyReport& r) {
            r.lhs = kronecker_F(a1, z1, tau) * kronecker_F(a2, z2, tau);
            r.rhs = kronecker_F(a1 + a2, z1, tau) * kronecker_F(a2, z2 - z1, tau) +
                    kronecker_F(a1 + a2, z2, tau) * kronecker_F(a1, z1 - z2, tau);
            r.residual = rel(r.lhs, r.rhs);
        }));
    }
    return out;
}

}  // namespace detail

/// Enumerates the instances of one relation family within the bounds and
/// checks each one. Output order depends only on the options.
inline std::vector<VerifyReport> run_sweep(const std::string& family, const Tau& tau, const SweepOptions& o,
                                           const NumericsConfig& cfg = {}) {
    if (family == "kronecker") return detail::kronecker_sweep(tau, o);

    if (family == "prop-mat") {
        std::vector<VerifyReport> out;
        for (std::uint64_t w = 0; w <= o.max_weight; ++w)
            for (std::uint64_t a = 0; a <= w; ++a) {
                long r = static_cast<long>(a), s = static_cast<long>(w - a);
                if (r == 1 && s == 1) continue;
                out.push_back(detail::timed("prop-mat", to_string(Index{r, s}), "", 0.0, [&](VerifyReport& rep) {
                    Expression diff = fay_formal(Index{r, s}).rhs - prop_mat_identity(r, s).rhs;
                    rep.residual = static_cast<double>(diff.size());
                }));
            }
        return out;
    }

    std::vector<std::function<VerifyReport(Evaluator&)>> jobs;
    const double tol = o.tolerance;
    auto all = indices_up_to(o.max_weight, o.max_length);
    if (family == "shuffle") {
        for (const auto& [v, w] : detail::shuffle_pairs(o))
            jobs.push_back([v, w, tol](Evaluator& ev) {
                return detail::numeric_identity("shuffle", to_string(v) + " | " + to_string(w), shuffle_identity(v, w), ev, tol);
            });
    } else if (family == "reflection") {
        for (const auto& k : all)
            jobs.push_back([k, tol](Evaluator& ev) {
                return detail::numeric_identity("reflection", to_string(k), reflection_identity(k), ev, tol);
            });
    } else if (family == "fay") {
        for (const auto& k : all)
            if (k.length() == 1 || k.back() != 1)
                jobs.push_back([k, tol](Evaluator& ev) {
                    return detail::numeric_identity("fay", to_string(k), fay_identity(k), ev, tol);
                });
    } else if (family == "parity") {
        for (const auto& k : all)
            if (k.length() >= 2 && k.parity() == Parity::even)
                jobs.push_back([k, tol](Evaluator& ev) {
                    return detail::numeric_identity("parity", to_string(k), parity_split(k), ev, tol);
                });
    } else if (family == "trailing-ones") {
        for (const auto& k : all)
            if (k.back() == 1 && !std::all_of(k.begin(), k.end(), [](auto x) { return x == 1; }))
                jobs.push_back([k, tol](Evaluator& ev) {
                    return detail::numeric_identity("trailing-ones", to_string(k), trailing_ones(k), ev, tol);
                });
    } else if (family == "reduction") {
        for (const auto& k : all)
            jobs.push_back([k, tol, fuel = o.fuel](Evaluator& ev) { return verify_reduction(k, ev, tol, fuel); });
    } else {
        throw ArgumentError("unknown family '" + family + "'");
    }

    Evaluator ev(tau, cfg);
    std::vector<VerifyReport> out(jobs.size());
    parallel_for(jobs.size(), o.threads, [&](std::size_t i) { out[i] = jobs[i](ev); });
    return out;
}

/// One JSON line per index, in canonical index order.
inline std::vector<std::string> reduction_table(std::uint64_t max_weight, std::size_t max_length, unsigned threads = 1,
                                                long fuel = 10000) {
    auto all = indices_up_to(max_weight, max_length);
    std::vector<std::string> rows(all.size());
    parallel_for(all.size(), threads, [&](std::size_t i) {
        const Index& k = all[i];
        auto red = reduce(k, fuel);
        nlohmann::json j{{"index", k.entries()},
                         {"expression", to_json(red.expression)},
                         {"trace_len", red.trace.steps.size()},
                         {"terminal", is_terminal(k)}};
        rows[i] = j.dump();
    });
    return rows;
}

}  // namespace emzv
