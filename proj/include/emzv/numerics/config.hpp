#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "../errors.hpp"

namespace emzv {

struct NumericsConfig {
    int theta_terms = 64;          // cap on the theta series length
    double cauchy_radius = 0.5;    // radius of the alpha-circle for f^(n)
    int cauchy_samples = 64;       // points on that circle
    int quad_order = 20;           // Gauss-Legendre nodes per panel
    int quad_depth = 40;           // geometric panels toward 0 for admissible integrals
    double eps0 = 1e-13;           // first cutoff used for regularization
    int eps_points = 2;            // cutoffs eps0, eps0*f, eps0*f^2, ...
    double eps_factor = 1e-3;
    double tolerance = 1e-8;       // admissible refinement tolerance; regularized fits allow 10x

    void validate() const {
        if (theta_terms < 1) throw ArgumentError("theta_terms must be >= 1");
        if (!(cauchy_radius > 0 && cauchy_radius < 1)) throw ArgumentError("cauchy_radius must lie in (0,1)");
        if (cauchy_samples < 10) throw ArgumentError("cauchy_samples must be >= 10");
        if (quad_order < 2 || quad_order > 64) throw ArgumentError("quad_order must lie in [2,64]");
        if (quad_depth < 1 || quad_depth > 1000) throw ArgumentError("quad_depth must lie in [1,1000]");
        if (!(eps0 > 0 && eps0 < 0.1)) throw ArgumentError("eps0 must lie in (0,0.1)");
        if (eps_points < 2) throw ArgumentError("eps_points must be >= 2");
        if (!(eps_factor > 0 && eps_factor < 1)) throw ArgumentError("eps_factor must lie in (0,1)");
        if (!(tolerance > 0)) throw ArgumentError("tolerance must be positive");
    }

    /// Largest Laurent index n the Cauchy extraction supports.
    [[nodiscard]] int max_letter() const { return (cauchy_samples - 8) / 2; }
};

/// Flat "key = value" text; '#' starts a comment; unknown keys are errors.
inline NumericsConfig parse_config(std::istream& in) {
    NumericsConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos) throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "theta_terms") cfg.theta_terms = std::stoi(val);
            else if (key == "cauchy_radius") cfg.cauchy_radius = std::stod(val);
            else if (key == "cauchy_samples") cfg.cauchy_samples = std::stoi(val);
            else if (key == "quad_order") cfg.quad_order = std::stoi(val);
            else if (key == "quad_depth") cfg.quad_depth = std::stoi(val);
            else if (key == "eps0") cfg.eps0 = std::stod(val);
            else if (key == "eps_points") cfg.eps_points = std::stoi(val);
            else if (key == "eps_factor") cfg.eps_factor = std::stod(val);
            else if (key == "tolerance") cfg.tolerance = std::stod(val);
            else throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const std::logic_error&) {
            throw ParseError("config line " + std::to_string(lineno) + ": bad value '" + val + "'");
        }
    }
    cfg.validate();
    return cfg;
}

inline NumericsConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open config file " + path);
    return parse_config(in);
}

}  // namespace emzv
