#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <vector>

#include "../errors.hpp"
#include "../expression.hpp"
#include "../index.hpp"
#include "config.hpp"
#include "kronecker.hpp"
#include "quadrature.hpp"
#include "tau.hpp"

namespace emzv {

/// A value with an empirical absolute error estimate.
struct Estimate {
    Complex value;
    double error = 0;
};

/// zeta(s) for s >= 2 by Euler-Maclaurin; zeta(0) = -1/2.
inline double zeta(int s) {
    if (s == 0) return -0.5;
    if (s < 2) throw ArgumentError("zeta(s) needs s = 0 or s >= 2");
    constexpr int N = 20;
    double sum = 0;
    for (int n = 1; n < N; ++n) sum += std::pow(n, -s);
    // tail from N: N^{1-s}/(s-1) + N^{-s}/2 + sum_j B_{2j}/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1}
    const double b2j[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
    double tail = std::pow(N, 1 - s) / (s - 1) + 0.5 * std::pow(N, -s);
    double rising = s;  // s(s+1)...(s+2j-2)
    double fact = 2;    // (2j)!
    for (int j = 1; j <= 6; ++j) {
        tail += b2j[j - 1] / fact * rising * std::pow(N, -s - 2 * j + 1);
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return sum + tail;
}

/// Evaluates eMZVs at one tau. Every cache is guarded, so one Evaluator may
/// be shared by concurrent callers.
class Evaluator {
public:
    explicit Evaluator(Tau tau, NumericsConfig cfg = {}) : tau_(tau), cfg_(cfg) {
        cfg_.validate();
        if (!(cfg_.cauchy_radius < std::min(1.0, tau_.imag())))
            throw ArgumentError("cauchy_radius must be below min(1, Im tau)");
        sampler_ = std::make_unique<LaurentSampler>(tau_, cfg_, cfg_.cauchy_samples, cfg_.cauchy_radius);
        check_aliasing();
    }

    [[nodiscard]] const Tau& tau() const noexcept { return tau_; }
    [[nodiscard]] const NumericsConfig& config() const noexcept { return cfg_; }

    /// Convergent iterated integral for admissible k, compared against the
    /// same integral on a grid with every panel halved.
    Estimate emzv_admissible(const Index& k) {
        if (!k.is_admissible()) throw PreconditionError("emzv_admissible needs an admissible index, got " + to_string(k));
        if (k.empty()) return {1.0, 0};
        if (auto v = lookup(admissible_cache_, k)) return *v;
        check_letters(k);
        Complex coarse = split_integral(k, grid_for(0.0, false));
        Complex fine = split_integral(k, grid_for(0.0, true));
        double err = std::abs(fine - coarse);
        if (err > cfg_.tolerance * std::max(1.0, std::abs(fine)))
            throw ToleranceError("quadrature did not stabilise for " + to_string(k));
        Estimate e{fine, err};
        store(admissible_cache_, k, e);
        return e;
    }

    /// Constant term of the asymptotic expansion of the truncated integral
    /// in L = log(-2 pi i eps).
    Estimate emzv_regularized(const Index& k) {
        if (k.empty()) throw PreconditionError("emzv_regularized needs length >= 1");
        if (k.is_admissible()) return fit(k).front();  // the cutoff limit, independent of emzv_admissible
        return log_polynomial(k).front();
    }

    /// Dispatches to emzv_admissible or emzv_regularized; I() = 1.
    Estimate value(const Index& k) {
        if (k.empty()) return {1.0, 0};
        if (k.is_admissible()) return emzv_admissible(k);
        return emzv_regularized(k);
    }

    Estimate eval_expression(const Expression& e) {
        Complex total = 0;
        double err = 0;
        for (const auto& [m, c] : e.terms()) {
            std::vector<Estimate> vals;
            for (const auto& a : m.atoms()) vals.push_back(value(a));
            Complex prod = c.get_d();
            for (const auto& v : vals) prod *= v.value;
            total += prod;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                double t = std::abs(c.get_d()) * vals[i].error;
                for (std::size_t j = 0; j < vals.size(); ++j)
                    if (j != i) t *= std::abs(vals[j].value);
                err += t;
            }
        }
        return {total, err};
    }

    /// Truncated integral over eps < t_1 < ... < t_r < 1 - eps.
    Complex truncated(const Index& k, double eps) {
        check_letters(k);
        return split_integral(k, grid_for(eps, false));
    }

private:
    using Poly = std::vector<Estimate>;  // coefficients of L^0, L^1, ...

    template <class Map>
    static std::optional<typename Map::mapped_type> lookup_in(std::mutex& m, Map& map, const Index& k) {
        std::lock_guard lock(m);
        auto it = map.find(k);
        if (it == map.end()) return std::nullopt;
        return it->second;
    }
    std::optional<Estimate> lookup(std::map<Index, Estimate>& map, const Index& k) {
        return lookup_in(value_mutex_, map, k);
    }
    void store(std::map<Index, Estimate>& map, const Index& k, const Estimate& e) {
        std::lock_guard lock(value_mutex_);
        map.emplace(k, e);
    }

    void check_letters(const Index& k) const {
        for (auto x : k)
            if (static_cast<int>(x) > sampler_->max_letter())
                throw ArgumentError("index entry too large for cauchy_samples: " + to_string(k));
    }

    void check_aliasing() const {
        LaurentSampler doubled(tau_, cfg_, 2 * cfg_.cauchy_samples, cfg_.cauchy_radius);
        const int n = std::min(8, sampler_->max_letter());
        std::vector<Complex> a, b;
        for (double z : {0.5, 0.25, 1e-3}) {
            sampler_->coefficients(z, n, a);
            doubled.coefficients(z, n, b);
            for (int i = 0; i <= n; ++i)
                if (std::abs(a[i] - b[i]) > 1e-9 * std::max(1.0, std::abs(b[i])))
                    throw AliasError("Cauchy extraction aliases at cauchy_samples = " + std::to_string(cfg_.cauchy_samples));
        }
    }

    struct GridData {
        PanelGrid grid;
        std::vector<std::vector<Complex>> letters;  // letters[n][node]
        std::mutex mutex;
    };

    GridData& grid_for(double eps, bool refined) {
        std::lock_guard lock(grid_mutex_);
        auto& slot = grids_[{eps, refined}];
        if (!slot) {
            slot = std::make_unique<GridData>();
            auto edges = eps == 0.0 ? graded_edges(cfg_.quad_depth) : cutoff_edges(eps);
            if (refined) edges = refine_edges(edges, 2);
            slot->grid = build_grid(std::move(edges), cfg_.quad_order);
        }
        return *slot;
    }

    // f^(n) at every node of the grid for every supported n; built once so
    // the returned reference stays valid.
    const std::vector<std::vector<Complex>>& letters_for(GridData& g) {
        std::lock_guard lock(g.mutex);
        if (g.letters.empty()) {
            const int n_max = sampler_->max_letter();
            const std::size_t nodes = g.grid.nodes.size();
            std::vector<std::vector<Complex>> table(n_max + 1, std::vector<Complex>(nodes));
            std::vector<Complex> coef;
            for (std::size_t i = 0; i < nodes; ++i) {
                sampler_->coefficients(g.grid.nodes[i], n_max, coef);
                table[0][i] = 1.0;
                for (int n = 1; n <= n_max; ++n) table[n][i] = coef[n];
            }
            g.letters = std::move(table);
        }
        return g.letters;
    }

    // Splits the path at 1/2 and maps the upper half onto the lower one via
    // f^(k)(1-t) = (-1)^k f^(k)(t).
    Complex split_integral(const Index& k, GridData& g) {
        const auto& letters = letters_for(g);
        std::vector<const std::vector<Complex>*> fw, bw;
        for (auto x : k) fw.push_back(&letters[x]);
        for (std::size_t j = k.length(); j-- > 0;) bw.push_back(&letters[k[j]]);
        auto A = iterated_prefixes(g.grid, fw);
        auto B = iterated_prefixes(g.grid, bw);
        const std::size_t r = k.length();
        Complex total = 0;
        for (std::size_t i = 0; i <= r; ++i) {
            std::uint64_t w = 0;
            for (std::size_t j = i; j < r; ++j) w += k[j];
            total += A[i] * B[r - i] * ((w % 2 == 0) ? 1.0 : -1.0);
        }
        return total;
    }

    // The truncated integral behaves like P_k(L) + o(1); P_k satisfies
    // dP_k/dL = -[k_1 = 1] P_{k_2..k_r} + [k_r = 1] P_{k_1..k_{r-1}}.
    Poly log_polynomial(const Index& k) {
        if (k.empty()) return {Estimate{1.0, 0}};
        {
            std::lock_guard lock(value_mutex_);
            if (auto it = poly_cache_.find(k); it != poly_cache_.end()) return it->second;
        }
        Poly result = k.is_admissible() ? Poly{emzv_admissible(k)} : fit(k);
        std::lock_guard lock(value_mutex_);
        poly_cache_.emplace(k, result);
        return result;
    }

    Poly fit(const Index& k) {
        Poly result;
        Poly deriv;
        auto accumulate = [&](const Poly& p, double sign) {
            if (deriv.size() < p.size()) deriv.resize(p.size(), Estimate{0.0, 0});
            for (std::size_t i = 0; i < p.size(); ++i) {
                deriv[i].value += sign * p[i].value;
                deriv[i].error += p[i].error;
            }
        };
        if (k.front() == 1) accumulate(log_polynomial(k.suffix_from(1)), -1);
        if (k.back() == 1) accumulate(log_polynomial(k.prefix(k.length() - 1)), +1);
        result.assign(deriv.size() + 1, Estimate{0.0, 0});
        for (std::size_t i = 0; i < deriv.size(); ++i)
            result[i + 1] = {deriv[i].value / static_cast<double>(i + 1), deriv[i].error / static_cast<double>(i + 1)};
        const Complex shift(std::log(2 * std::numbers::pi), -std::numbers::pi / 2);
        std::vector<Complex> c0;
        double eps = cfg_.eps0;
        double poly_err = 0;
        for (int j = 0; j < cfg_.eps_points; ++j, eps *= cfg_.eps_factor) {
            const Complex L = std::log(eps) + shift;
            Complex tail = 0, Ln = 1;
            double err = 0;
            for (std::size_t n = 1; n < result.size(); ++n) {
                Ln *= L;
                tail += result[n].value * Ln;
                err += result[n].error * std::abs(Ln);
            }
            poly_err = std::max(poly_err, err);
            c0.push_back(truncated(k, eps) - tail);
        }
        double spread = 0;
        for (const auto& c : c0) spread = std::max(spread, std::abs(c - c0.back()));
        if (spread > 10 * cfg_.tolerance * std::max(1.0, std::abs(c0.back())))
            throw FitError("regularisation did not settle for " + to_string(k));
        result[0] = {c0.back(), spread + poly_err};
        return result;
    }

    Tau tau_;
    NumericsConfig cfg_;
    std::unique_ptr<LaurentSampler> sampler_;
    std::mutex value_mutex_;
    std::map<Index, Estimate> admissible_cache_;
    std::map<Index, Poly> poly_cache_;
    std::mutex grid_mutex_;
    std::map<std::pair<double, bool>, std::unique_ptr<GridData>> grids_;
};

/// Free-function forms for one-off calls.
inline Estimate emzv_admissible(const Index& k, const Tau& tau, const NumericsConfig& cfg = {}) {
    return Evaluator(tau, cfg).emzv_admissible(k);
}
inline Estimate emzv_regularized(const Index& k, const Tau& tau, const NumericsConfig& cfg = {}) {
    return Evaluator(tau, cfg).emzv_regularized(k);
}
inline Estimate eval_expression(const Expression& e, const Tau& tau, const NumericsConfig& cfg = {}) {
    return Evaluator(tau, cfg).eval_expression(e);
}

}  // namespace emzv
