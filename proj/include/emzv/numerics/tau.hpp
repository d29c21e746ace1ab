#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <regex>
#include <string>

#include "../errors.hpp"

namespace emzv {

using Complex = std::complex<double>;

/// A point of the upper half-plane.
class Tau {
public:
    explicit Tau(Complex tau) : tau_(tau) {
        if (!std::isfinite(tau.real()) || !std::isfinite(tau.imag()) || tau.imag() <= 0)
            throw ArgumentError("tau must lie in the upper half-plane");
    }
    Tau(double re, double im) : Tau(Complex(re, im)) {}

    [[nodiscard]] Complex value() const noexcept { return tau_; }
    [[nodiscard]] double imag() const noexcept { return tau_.imag(); }
    [[nodiscard]] double real() const noexcept { return tau_.real(); }
    /// q = exp(2 pi i tau).
    [[nodiscard]] Complex q() const { return std::exp(Complex(0, 2 * std::numbers::pi) * tau_); }

    friend bool operator==(const Tau&, const Tau&) = default;

private:
    Complex tau_;
};

inline std::string to_string(const Tau& t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g+%.17gi", t.real(), t.imag());
    return buf;
}

/// Accepts "a+bi" with decimal a and b > 0; "bi" is shorthand for "0+bi".
inline Tau parse_tau(const std::string& text) {
    static const std::regex full(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*\+\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*i\s*$)");
    static const std::regex imag_only(R"(^\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*i\s*$)");
    std::smatch m;
    double re = 0, im = 0;
    if (std::regex_match(text, m, full)) {
        re = std::stod(m[1].str());
        im = std::stod(m[2].str());
    } else if (std::regex_match(text, m, imag_only)) {
        im = std::stod(m[1].str());
    } else {
        throw ParseError("malformed tau '" + text + "' (expected a+bi)");
    }
    if (im <= 0) throw ParseError("tau must have positive imaginary part: '" + text + "'");
    return Tau(re, im);
}

}  // namespace emzv
