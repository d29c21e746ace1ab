#pragma once

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "../errors.hpp"

namespace emzv {

/// Gauss-Legendre rule on [-1, 1] together with the spectral integration
/// matrix: (W v)[p] integrates the interpolant of v from -1 to x_p.
struct GaussRule {
    int order = 0;
    std::vector<double> x;
    std::vector<double> w;
    std::vector<double> W;  // row-major order x order

    [[nodiscard]] double cumulative(int p, int q) const { return W[static_cast<std::size_t>(p * order + q)]; }
};

inline GaussRule make_gauss_rule(int order) {
    using boost::math::legendre_p;
    using boost::math::legendre_p_prime;
    if (order < 2) throw ArgumentError("Gauss-Legendre order must be >= 2");
    GaussRule g;
    g.order = order;
    auto zeros = boost::math::legendre_p_zeros<double>(order);  // non-negative half
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
        if (*it != 0) g.x.push_back(-*it);
    for (double z : zeros) g.x.push_back(z);
    for (double xi : g.x) {
        double d = legendre_p_prime(order, xi);
        g.w.push_back(2.0 / ((1 - xi * xi) * d * d));
    }
    // integral of P_m from -1 to x
    auto int_p = [](int m, double x) {
        if (m == 0) return x + 1;
        return (legendre_p(m + 1, x) - legendre_p(m - 1, x)) / (2.0 * m + 1);
    };
    g.W.assign(static_cast<std::size_t>(order * order), 0.0);
    for (int p = 0; p < order; ++p)
        for (int q = 0; q < order; ++q) {
            double s = 0;
            for (int m = 0; m < order; ++m) s += (2.0 * m + 1) / 2 * legendre_p(m, g.x[q]) * int_p(m, g.x[p]);
            g.W[static_cast<std::size_t>(p * order + q)] = g.w[q] * s;
        }
    return g;
}

/// Shared, lazily built rules.
inline const GaussRule& gauss_rule(int order) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> rules;
    std::lock_guard lock(mutex);
    auto& slot = rules[order];
    if (!slot) slot = std::make_unique<GaussRule>(make_gauss_rule(order));
    return *slot;
}

/// Composite grid of panels on [a, 1/2], each carrying the nodes of one
/// Gauss rule.
struct PanelGrid {
    std::vector<double> edges;
    std::vector<double> nodes;
    int order = 0;

    [[nodiscard]] std::size_t panels() const { return edges.size() - 1; }
};

inline PanelGrid build_grid(std::vector<double> edges, int order) {
    const GaussRule& g = gauss_rule(order);
    PanelGrid grid;
    grid.order = order;
    grid.edges = std::move(edges);
    for (std::size_t p = 0; p + 1 < grid.edges.size(); ++p) {
        double lo = grid.edges[p], hi = grid.edges[p + 1];
        for (double x : g.x) grid.nodes.push_back(lo + (hi - lo) * (x + 1) / 2);
    }
    return grid;
}

/// Splits every panel into `split` equal parts.
inline std::vector<double> refine_edges(const std::vector<double>& edges, int split) {
    std::vector<double> out{edges.front()};
    for (std::size_t p = 0; p + 1 < edges.size(); ++p)
        for (int s = 1; s <= split; ++s) out.push_back(edges[p] + (edges[p + 1] - edges[p]) * s / split);
    return out;
}

/// Edges 0, 2^-depth/2, ..., 1/4, 1/2.
inline std::vector<double> graded_edges(int depth) {
    std::vector<double> e{0.0};
    for (int j = depth; j >= 0; --j) e.push_back(std::ldexp(0.5, -j));
    return e;
}

/// Edges eps, 2 eps, 4 eps, ..., 1/2.
inline std::vector<double> cutoff_edges(double eps) {
    if (!(eps > 0 && eps < 0.25)) throw ArgumentError("cutoff must lie in (0, 1/4)");
    std::vector<double> e{eps};
    while (e.back() * 2 < 0.5) e.push_back(e.back() * 2);
    e.push_back(0.5);
    return e;
}

/// Iterated integrals A_{w_1..w_i} = int_{a<t_1<...<t_i<1/2} prod f^(w_j)(t_j)
/// for i = 0..r. `letter_values[j]` holds f^(w_{j+1}) at the grid nodes.
inline std::vector<std::complex<double>> iterated_prefixes(
    const PanelGrid& grid, const std::vector<const std::vector<std::complex<double>>*>& letter_values) {
    using C = std::complex<double>;
    const GaussRule& g = gauss_rule(grid.order);
    const int Q = grid.order;
    const std::size_t n = grid.nodes.size();
    std::vector<C> out{1.0};
    std::vector<C> prev(n, 1.0), next(n), integrand(n);
    for (const auto* fv : letter_values) {
        for (std::size_t i = 0; i < n; ++i) integrand[i] = prev[i] * (*fv)[i];
        C acc = 0;
        for (std::size_t p = 0; p < grid.panels(); ++p) {
            const double h = (grid.edges[p + 1] - grid.edges[p]) / 2;
            const C* seg = &integrand[p * Q];
            for (int a = 0; a < Q; ++a) {
                C s = 0;
                for (int b = 0; b < Q; ++b) s += g.cumulative(a, b) * seg[b];
                next[p * Q + a] = acc + h * s;
            }
            C total = 0;
            for (int b = 0; b < Q; ++b) total += g.w[b] * seg[b];
            acc += h * total;
        }
        out.push_back(acc);
        prev.swap(next);
    }
    return out;
}

}  // namespace emzv
