#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "emzv/numerics/values.hpp"
#include "emzv/relations.hpp"

using namespace emzv;

namespace {

constexpr double pi = std::numbers::pi;

// Jacobi triple product form of the same theta function.
Complex theta_product(Complex z, const Tau& tau) {
    const Complex I(0, 1);
    const Complex q = tau.q(), w = std::exp(2 * pi * I * z);
    Complex p = 1, qn = 1;
    for (int n = 1; n < 60; ++n) {
        qn *= q;
        p *= (1.0 - qn) * (1.0 - qn * w) * (1.0 - qn / w);
    }
    return std::exp(I * pi * tau.value() / 4.0) * (std::exp(I * pi * z) - std::exp(-I * pi * z)) * p;
}

// pi cot(pi z) + 4 pi sum_{k,l} sin(2 pi k z) q^{kl}
Complex f1_series(Complex z, const Tau& tau) {
    Complex s = pi * std::cos(pi * z) / std::sin(pi * z);
    const Complex q = tau.q();
    for (int k = 1; k < 40; ++k)
        for (int l = 1; l < 40; ++l) s += 4 * pi * std::sin(2 * pi * k * z) * std::pow(q, k * l);
    return s;
}

const Tau tau_i(0, 1);
const Tau tau_2i(0, 2);

}  // namespace

TEST(Tau, Parse) {
    EXPECT_EQ(parse_tau("0+1i").value(), Complex(0, 1));
    EXPECT_EQ(parse_tau("0.25+1.5i").value(), Complex(0.25, 1.5));
    EXPECT_EQ(parse_tau("-0.5+2i").value(), Complex(-0.5, 2));
    EXPECT_EQ(parse_tau("2i").value(), Complex(0, 2));
    EXPECT_THROW(parse_tau("1-1i"), ParseError);
    EXPECT_THROW(parse_tau("0+0i"), ParseError);
    EXPECT_THROW(parse_tau("abc"), ParseError);
    EXPECT_THROW(Tau(0, -1), ArgumentError);
}

TEST(Config, Parse) {
    std::istringstream in("# comment\nquad_order = 24\n eps0=1e-12 \n\ntolerance = 1e-9\n");
    auto cfg = parse_config(in);
    EXPECT_EQ(cfg.quad_order, 24);
    EXPECT_DOUBLE_EQ(cfg.eps0, 1e-12);
    EXPECT_DOUBLE_EQ(cfg.tolerance, 1e-9);
    std::istringstream bad("nonsense = 3\n");
    EXPECT_THROW(parse_config(bad), ParseError);
    std::istringstream range("eps0 = 0.5\n");
    EXPECT_THROW(parse_config(range), ArgumentError);
}

TEST(Theta, Basics) {
    EXPECT_EQ(theta(0.0, tau_i), Complex(0, 0));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < 20; ++i) {
        Complex z(u(rng), u(rng));
        for (const Tau& t : {tau_i, Tau(0.3, 0.8)}) {
            EXPECT_LT(std::abs(theta(z + 1.0, t) + theta(z, t)), 1e-13);
            EXPECT_LT(std::abs(theta(-z, t) + theta(z, t)), 1e-13);
            EXPECT_LT(std::abs(theta(z, t) - theta_product(z, t)), 1e-13 * std::max(1.0, std::abs(theta(z, t))));
        }
    }
}

// Frozen from mpmath at 30 digits.
TEST(Theta, Oracle) {
    Complex a = theta(Complex(0.3, 0.1), tau_i);
    EXPECT_NEAR(a.real(), -0.172931536591592663, 1e-14);
    EXPECT_NEAR(a.imag(), 0.773651221771173147, 1e-14);
    Complex b = theta(Complex(0.7, -0.2), Tau(0.25, 1.3));
    EXPECT_NEAR(b.real(), -0.415050508777347529, 1e-14);
    EXPECT_NEAR(b.imag(), 0.632301024351569144, 1e-14);
}

TEST(Theta, Derivative) {
    Complex tp = theta_prime0(tau_i);
    EXPECT_TRUE(std::isfinite(tp.real()) && std::abs(tp) > 0);
    EXPECT_LT(std::abs(theta(1e-4, tau_i) / (tp * 1e-4) - 1.0), 1e-6);
    const double h = 1e-5;
    EXPECT_LT(std::abs((theta(h, tau_i) - theta(-h, tau_i)) / (2 * h) - tp), 1e-8);
}

TEST(Kronecker, Properties) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> re(0.05, 0.95), im(-0.3, 0.3);
    const Complex I(0, 1);
    for (int i = 0; i < 20; ++i) {
        Complex a(re(rng), im(rng)), z(re(rng), im(rng));
        EXPECT_LT(std::abs(kronecker_F(a, z, tau_i) + kronecker_F(-a, -z, tau_i)), 1e-10);
        EXPECT_LT(std::abs(kronecker_F(a, z + 1.0, tau_i) - kronecker_F(a, z, tau_i)), 1e-10);
        EXPECT_LT(std::abs(kronecker_F(a, z + tau_i.value(), tau_i) - std::exp(-2 * pi * I * a) * kronecker_F(a, z, tau_i)),
                  1e-9);
    }
    EXPECT_THROW(kronecker_F(0.3, 0.0, tau_i), PoleError);
    EXPECT_THROW(kronecker_F(Complex(0, 1) + 1e-10, 0.3, tau_i), PoleError);
}

TEST(Laurent, Coefficients) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(0.05, 0.95), im(-0.2, 0.2);
    for (int i = 0; i < 20; ++i) {
        Complex z(re(rng), im(rng));
        EXPECT_EQ(f_n(0, z, tau_i), Complex(1.0));
        EXPECT_LT(std::abs(f_n(1, z, tau_i) - f1_series(z, tau_i)), 1e-10);
        for (int k = 1; k <= 5; ++k)
            EXPECT_LT(std::abs(f_n(k, 1.0 - z, tau_i) - ((k % 2) ? -1.0 : 1.0) * f_n(k, z, tau_i)), 1e-10);
    }
    EXPECT_THROW(f_n(1, 0.0, tau_i), PoleError);
}

TEST(Laurent, StableUnderResampling) {
    NumericsConfig a, b;
    b.cauchy_samples = 128;
    b.cauchy_radius = 0.25;
    for (double z : {0.1, 0.37, 0.5})
        for (int n = 1; n <= 6; ++n) EXPECT_LT(std::abs(f_n(n, z, tau_i, a) - f_n(n, z, tau_i, b)), 1e-9);
}

TEST(Quadrature, GaussRule) {
    const auto& g = gauss_rule(20);
    double s = 0;
    for (double w : g.w) s += w;
    EXPECT_NEAR(s, 2.0, 1e-14);
    // the cumulative matrix integrates x^3 exactly from -1
    for (int p = 0; p < g.order; ++p) {
        double v = 0;
        for (int q = 0; q < g.order; ++q) v += g.cumulative(p, q) * std::pow(g.x[q], 3);
        EXPECT_NEAR(v, (std::pow(g.x[p], 4) - 1) / 4, 1e-14);
    }
}

TEST(Zeta, Values) {
    EXPECT_NEAR(zeta(2), pi * pi / 6, 1e-14);
    EXPECT_NEAR(zeta(4), 1.082323233711138191, 1e-14);
    EXPECT_NEAR(zeta(3), 1.202056903159594285, 1e-14);
    EXPECT_EQ(zeta(0), -0.5);
    EXPECT_THROW(zeta(1), ArgumentError);
}

TEST(Admissible, LengthOne) {
    for (const Tau& t : {tau_i, tau_2i}) {
        Evaluator ev(t);
        EXPECT_LT(std::abs(ev.emzv_admissible(Index{2}).value + pi * pi / 3), 1e-8);
        EXPECT_LT(std::abs(ev.emzv_admissible(Index{3}).value), 1e-8);
        EXPECT_LT(std::abs(ev.emzv_admissible(Index{4}).value + 2 * zeta(4)), 1e-8);
    }
}

TEST(Admissible, SimplexVolumes) {
    Evaluator ev(tau_i);
    double fact = 1;
    for (std::size_t r = 1; r <= 4; ++r) {
        fact *= static_cast<double>(r);
        EXPECT_LT(std::abs(ev.emzv_admissible(Index(std::vector<Index::value_type>(r, 0))).value - 1.0 / fact), 1e-10);
    }
    EXPECT_THROW(ev.emzv_admissible(Index{1, 2}), PreconditionError);
}

TEST(Admissible, CoarseGridFails) {
    NumericsConfig cfg;
    cfg.quad_order = 2;
    cfg.quad_depth = 3;
    cfg.tolerance = 1e-14;
    Evaluator ev(tau_i, cfg);
    EXPECT_THROW(ev.emzv_admissible(Index{2}), ToleranceError);
}

// I(0,1) = i pi/2 + 2 sum_l log(1 - q^l), from the q-expansion of f^(1);
// frozen from mpmath.
TEST(Regularized, ZeroOneOracle) {
    EXPECT_LT(std::abs(Evaluator(tau_i).emzv_regularized(Index{0, 1}).value -
                       Complex(-0.0037453648995370922313, 1.5707963267948966192)),
              1e-9);
    EXPECT_LT(std::abs(Evaluator(tau_2i).emzv_regularized(Index{0, 1}).value -
                       Complex(-6.974721197201217094e-6, 1.5707963267948966192)),
              1e-9);
}

TEST(Regularized, Basics) {
    Evaluator ev(tau_i);
    EXPECT_LT(std::abs(ev.emzv_regularized(Index{1}).value), 1e-6);
    EXPECT_LT(std::abs(ev.emzv_regularized(Index{1, 1}).value), 1e-6);
    for (const auto& k : {Index{2}, Index{0, 2}, Index{2, 0, 3}, Index{0, 1, 0}})
        EXPECT_LT(std::abs(ev.emzv_regularized(k).value - ev.emzv_admissible(k).value), 1e-6) << k;
    EXPECT_THROW(ev.emzv_regularized(Index{}), PreconditionError);
}

TEST(Regularized, ReflectionAndShuffle) {
    Evaluator ev(tau_i);
    for (const auto& k : indices_up_to(4, 4)) {
        Complex a = ev.value(k.reversed()).value;
        Complex b = ev.value(k).value * ((k.weight() % 2) ? -1.0 : 1.0);
        EXPECT_LT(std::abs(a - b), 1e-6) << k;
    }
    for (const auto& v : indices_up_to(3, 2))
        for (const auto& w : indices_up_to(3, 2)) {
            if (v.length() + w.length() > 4 || v.weight() + w.weight() > 4) continue;
            auto id = shuffle_identity(v, w);
            EXPECT_LT(std::abs(ev.eval_expression(id.lhs).value - ev.eval_expression(id.rhs).value), 1e-6)
                << v << " | " << w;
        }
}

TEST(Expression, Evaluation) {
    Evaluator ev(tau_i);
    EXPECT_EQ(ev.eval_expression(Expression::constant(1)).value, Complex(1.0));
    Complex a = ev.eval_expression(Expression::product(Index{0}, Index{2}, Rational(1, 2))).value;
    EXPECT_LT(std::abs(a - ev.value(Index{0, 2}).value), 1e-6);
}

TEST(Evaluator, QuadratureRefinementStable) {
    NumericsConfig fine;
    fine.quad_order = 30;
    Evaluator a(tau_i), b(tau_i, fine);
    for (const auto& k : {Index{2, 0, 2}, Index{0, 3, 1, 0}, Index{4, 1, 0}})
        EXPECT_LT(std::abs(a.emzv_admissible(k).value - b.emzv_admissible(k).value), 1e-8) << k;
}
