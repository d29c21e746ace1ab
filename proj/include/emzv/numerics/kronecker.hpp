#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "../errors.hpp"
#include "config.hpp"
#include "tau.hpp"

namespace emzv {

namespace detail {

inline void check_finite(const Complex& v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NonConvergence(std::string(what) + " is not finite");
}

// Number of theta terms n = 0..N-1 needed so that the dropped terms are
// below 1e-17 of the first one.
inline int theta_cutoff(const Tau& tau, double abs_im_z, const NumericsConfig& cfg) {
    const double pi = std::numbers::pi;
    for (int n = 1; n <= cfg.theta_terms; ++n) {
        double nh = n + 0.5;
        double log_ratio = -pi * tau.imag() * (nh * nh - 0.25) + 2.0 * n * pi * abs_im_z + std::log(2.0 * n + 1);
        if (log_ratio < std::log(1e-17)) return n;
    }
    throw NonConvergence("theta series needs more than theta_terms terms");
}

}  // namespace detail

/// Odd Jacobi theta function, summed as
/// 2i sum_{n>=0} (-1)^n exp(i pi tau (n+1/2)^2) sin((2n+1) pi z),
/// which pairs the terms n and -n-1 of the two-sided series.
inline Complex theta(Complex z, const Tau& tau, const NumericsConfig& cfg = {}) {
    const double pi = std::numbers::pi;
    const int N = detail::theta_cutoff(tau, std::abs(z.imag()), cfg);
    const Complex ipt = Complex(0, pi) * tau.value();
    Complex sum = 0;
    for (int n = 0; n < N; ++n) {
        double nh = n + 0.5;
        Complex t = std::exp(ipt * (nh * nh)) * std::sin(static_cast<double>(2 * n + 1) * pi * z);
        sum += (n % 2 == 0) ? t : -t;
    }
    Complex out = Complex(0, 2) * sum;
    detail::check_finite(out, "theta");
    return out;
}

/// Termwise z-derivative of `theta` at z = 0.
inline Complex theta_prime0(const Tau& tau, const NumericsConfig& cfg = {}) {
    const double pi = std::numbers::pi;
    const int N = detail::theta_cutoff(tau, 0.0, cfg);
    const Complex ipt = Complex(0, pi) * tau.value();
    Complex sum = 0;
    for (int n = 0; n < N; ++n) {
        double nh = n + 0.5;
        Complex t = std::exp(ipt * (nh * nh)) * (static_cast<double>(2 * n + 1) * pi);
        sum += (n % 2 == 0) ? t : -t;
    }
    Complex out = Complex(0, 2) * sum;
    if (std::abs(out) == 0) throw NonConvergence("theta'(0) vanished");
    return out;
}

/// Distance from z to the lattice Z + tau Z.
inline double lattice_distance(Complex z, const Tau& tau) {
    double n0 = std::round(z.imag() / tau.imag());
    double best = INFINITY;
    for (double n = n0 - 1; n <= n0 + 1; ++n) {
        Complex w = z - n * tau.value();
        double m0 = std::round(w.real());
        for (double m = m0 - 1; m <= m0 + 1; ++m) best = std::min(best, std::abs(w - m));
    }
    return best;
}

/// F(alpha, z) = theta(z+alpha) theta'(0) / (theta(z) theta(alpha)).
inline Complex kronecker_F(Complex alpha, Complex z, const Tau& tau, const NumericsConfig& cfg = {}) {
    constexpr double pole_radius = 1e-8;
    if (lattice_distance(z, tau) < pole_radius) throw PoleError("kronecker_F: z is a lattice point");
    if (lattice_distance(alpha, tau) < pole_radius) throw PoleError("kronecker_F: alpha is a lattice point");
    Complex out = theta(z + alpha, tau, cfg) * theta_prime0(tau, cfg) / (theta(z, tau, cfg) * theta(alpha, tau, cfg));
    detail::check_finite(out, "kronecker_F");
    return out;
}

/// Samples F(alpha_j, z) on the circle alpha_j = rho exp(2 pi i j / M) and
/// extracts the Laurent coefficients f^(0..n_max)(z) at many points z.
class LaurentSampler {
public:
    LaurentSampler(const Tau& tau, const NumericsConfig& cfg, int samples, double radius)
        : tau_(tau), cfg_(cfg), M_(samples), rho_(radius), tp0_(theta_prime0(tau, cfg)) {
        if (!(rho_ > 0 && rho_ < std::min(1.0, tau.imag())))
            throw ArgumentError("cauchy_radius must lie in (0, min(1, Im tau))");
        const double pi = std::numbers::pi;
        alpha_.resize(M_);
        theta_alpha_.resize(M_);
        for (int j = 0; j < M_; ++j) {
            alpha_[j] = std::polar(rho_, 2 * pi * j / M_);
            theta_alpha_[j] = theta(alpha_[j], tau_, cfg_);
        }
    }

    [[nodiscard]] int max_letter() const { return (M_ - 8) / 2; }

    /// out[n] = f^(n)(z), n = 0..n_max.
    void coefficients(Complex z, int n_max, std::vector<Complex>& out) const {
        if (n_max > max_letter()) throw ArgumentError("f^(n) requested beyond the supported Laurent index");
        if (lattice_distance(z, tau_) < 1e-300) throw PoleError("f^(n): z is a lattice point");
        const double pi = std::numbers::pi;
        const Complex tz = theta(z, tau_, cfg_);
        std::vector<Complex> F(M_);
        for (int j = 0; j < M_; ++j) F[j] = theta(z + alpha_[j], tau_, cfg_) * tp0_ / (tz * theta_alpha_[j]);
        out.assign(n_max + 1, 0);
        for (int n = 0; n <= n_max; ++n) {
            Complex s = 0;
            for (int j = 0; j < M_; ++j) s += F[j] * std::polar(1.0, -2 * pi * j * (n - 1) / M_);
            out[n] = s * std::pow(rho_, 1 - n) / static_cast<double>(M_);
        }
        for (const auto& v : out) detail::check_finite(v, "f^(n)");
    }

private:
    Tau tau_;
    NumericsConfig cfg_;
    int M_;
    double rho_;
    Complex tp0_;
    std::vector<Complex> alpha_;
    std::vector<Complex> theta_alpha_;
};

/// Laurent coefficient f^(n)(z) of F(alpha, z) in alpha, with a self-check
/// against the same extraction at twice the sample count.
inline Complex f_n(int n, Complex z, const Tau& tau, const NumericsConfig& cfg = {}) {
    if (n < 0) throw ArgumentError("f_n needs n >= 0");
    if (n == 0) return 1.0;
    if (n == 1 && lattice_distance(z, tau) < 1e-8) throw PoleError("f^(1) has a pole at lattice points");
    std::vector<Complex> a, b;
    LaurentSampler(tau, cfg, cfg.cauchy_samples, cfg.cauchy_radius).coefficients(z, n, a);
    LaurentSampler(tau, cfg, 2 * cfg.cauchy_samples, cfg.cauchy_radius).coefficients(z, n, b);
    if (std::abs(a[n] - b[n]) > 1e-9 * std::max(1.0, std::abs(b[n])))
        throw AliasError("f^(n) changed when doubling the Cauchy sample count");
    return a[n];
}

}  // namespace emzv
