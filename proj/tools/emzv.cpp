// Command-line front end: reduce, eval, verify, table, selftest.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "emzv/emzv.hpp"

namespace {

using namespace emzv;

enum Exit { ok = 0, failure = 1, parse_error = 2, fuel_exhausted = 3, numeric_failure = 4, verify_failed = 5 };

struct Options {
    std::string index;
    std::string tau = "0+1i";
    double tol = 1e-6;
    std::uint64_t max_weight = 3;
    std::size_t max_length = 3;
    std::string family;
    std::string format = "text";
    std::string out;
    long fuel = 10000;
    std::string config;
    unsigned threads = 1;
    bool trace = false;
    bool verify = false;
};

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_complex(Complex z) {
    return fmt_double(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + fmt_double(std::abs(z.imag())) + "i";
}

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

NumericsConfig load(const Options& o) { return o.config.empty() ? NumericsConfig{} : load_config(o.config); }

// Writes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ArgumentError("cannot open output file " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

int cmd_reduce(const Options& o) {
    Index k;
    Tau tau(0, 1);
    try {
        k = parse_index(o.index);
        tau = parse_tau(o.tau);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return parse_error;
    }
    ReductionResult res;
    try {
        res = reduce(k, o.fuel);
    } catch (const FuelExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& s : e.trace.steps) std::cerr << "  " << to_string(s) << "\n";
        return fuel_exhausted;
    }
    std::optional<VerifyReport> rep;
    if (o.verify) {
        Evaluator ev(tau, load(o));
        rep = verify_reduction(k, ev, o.tol, o.fuel);
    }
    Sink sink(o.out);
    auto& os = sink.os();
    if (o.format == "json") {
        nlohmann::json j{{"index", k.entries()}, {"expression", to_json(res.expression)},
                         {"trace_len", res.trace.steps.size()}};
        if (o.trace) {
            nlohmann::json steps = nlohmann::json::array();
            for (const auto& s : res.trace.steps)
                steps.push_back({{"rule", std::string(to_string(s.rule))},
                                 {"input", s.input.entries()},
                                 {"rhs", to_json(s.identity.rhs)}});
            j["trace"] = std::move(steps);
        }
        if (rep) j["verify"] = to_json(*rep);
        os << j.dump() << "\n";
    } else {
        os << to_string(res.expression) << "\n";
        if (o.trace)
            for (const auto& s : res.trace.steps) os << "# " << to_string(s) << "\n";
        if (rep) {
            os << "# lhs " << fmt_complex(rep->lhs) << "\n# rhs " << fmt_complex(rep->rhs) << "\n# residual "
               << fmt_double(rep->residual) << (rep->pass ? " pass" : " FAIL") << "\n";
            if (!rep->error.empty()) os << "# error " << rep->error << "\n";
        }
    }
    if (rep && !rep->pass) return rep->error.empty() ? verify_failed : numeric_failure;
    return ok;
}

int cmd_eval(const Options& o) {
    Index k;
    Tau tau(0, 1);
    try {
        k = parse_index(o.index);
        tau = parse_tau(o.tau);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return parse_error;
    }
    Estimate v;
    try {
        Evaluator ev(tau, load(o));
        v = ev.value(k);
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return numeric_failure;
    }
    Sink sink(o.out);
    if (o.format == "json")
        sink.os() << nlohmann::json{{"index", k.entries()}, {"tau", to_string(tau)}, {"value", complex_json(v.value)},
                                    {"error", v.error}, {"admissible", k.is_admissible()}}
                         .dump()
                  << "\n";
    else
        sink.os() << fmt_complex(v.value) << " ± " << fmt_double(v.error) << "\n";
    return ok;
}

int cmd_verify(const Options& o) {
    Tau tau(0, 1);
    try {
        tau = parse_tau(o.tau);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return parse_error;
    }
    SweepOptions so;
    so.max_weight = o.max_weight;
    so.max_length = o.max_length;
    so.tolerance = o.tol;
    so.threads = o.threads;
    so.fuel = o.fuel;
    auto reports = run_sweep(o.family, tau, so, load(o));
    Sink sink(o.out);
    std::size_t failed = 0;
    for (const auto& r : reports) {
        if (!r.pass) ++failed;
        if (o.format == "json" || !o.out.empty()) {
            sink.os() << to_json(r).dump() << "\n";
        } else {
            sink.os() << (r.pass ? "pass " : "FAIL ") << r.family << " " << r.instance << " residual "
                      << fmt_double(r.residual) << (r.error.empty() ? "" : " error: " + r.error) << "\n";
        }
    }
    std::cerr << o.family << ": " << reports.size() - failed << "/" << reports.size() << " passed\n";
    return failed == 0 ? ok : verify_failed;
}

int cmd_table(const Options& o) {
    std::vector<std::string> rows;
    try {
        rows = reduction_table(o.max_weight, o.max_length, o.threads, o.fuel);
    } catch (const FuelExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fuel_exhausted;
    }
    Sink sink(o.out);
    for (const auto& r : rows) sink.os() << r << "\n";
    return ok;
}

int cmd_selftest(const Options& o) {
    int failed = 0;
    auto check = [&](const std::string& name, bool pass) {
        std::cout << (pass ? "pass " : "FAIL ") << name << "\n";
        if (!pass) ++failed;
    };
    try {
        check("shuffle (1),(2,3)", shuffle(Index{1}, Index{2, 3}).size() == 3);
        check("p_poly (3) = u1^3", p_poly(Index{3}) == SparsePoly::monomial({3}));
        bool pm = true;
        for (long w = 0; w <= 6; ++w)
            for (long r = 0; r <= w; ++r)
                if (!(r == 1 && w - r == 1)) pm = pm && fay_formal(Index{r, w - r}).rhs == prop_mat_identity(r, w - r).rhs;
        check("length-2 Fay formula", pm);
        Evaluator ev(parse_tau(o.tau), load(o));
        const double pi = std::numbers::pi;
        check("I(2) = -pi^2/3", std::abs(ev.value(Index{2}).value + pi * pi / 3) < 1e-8);
        check("I(0,0) = 1/2", std::abs(ev.value(Index{0, 0}).value - 0.5) < 1e-10);
        check("I(1) = 0", std::abs(ev.value(Index{1}).value) < 1e-6);
        for (Index k : {Index{2, 1}, Index{1, 2, 2}, Index{1, 0, 3}}) {
            auto r = verify_reduction(k, ev, o.tol);
            check("reduction " + to_string(k), r.pass);
        }
    } catch (const std::exception& e) {
        std::cout << "FAIL exception: " << e.what() << "\n";
        ++failed;
    }
    return failed == 0 ? ok : failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact reduction and numerical evaluation of elliptic multiple zeta values"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", o.out, "Write output to PATH");
        sub->add_option("--config", o.config, "Numerics config file (key = value)");
        sub->add_option("--tau", o.tau, "Point of the upper half-plane, a+bi");
        sub->add_option("--tol", o.tol, "Residual tolerance");
        sub->add_option("--fuel", o.fuel, "Maximum rule applications per reduction")->check(CLI::PositiveNumber);
        sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));
    };
    auto add_bounds = [&](CLI::App* sub) {
        sub->add_option("--max-weight", o.max_weight, "Largest index weight");
        sub->add_option("--max-length", o.max_length, "Largest index length");
    };

    auto* reduce_cmd = app.add_subcommand("reduce", "Rewrite I(k) into admissible and {0,1}-index values");
    reduce_cmd->add_option("--index", o.index, "Index, e.g. 1,2,0")->required();
    reduce_cmd->add_flag("--trace", o.trace, "Print every rewriting step");
    reduce_cmd->add_flag("--verify", o.verify, "Check the result numerically at --tau");
    add_common(reduce_cmd);

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate I(k) at tau");
    eval_cmd->add_option("--index", o.index, "Index, e.g. 1,2,0")->required();
    add_common(eval_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Sweep a relation family");
    verify_cmd->add_option("--family", o.family, "Relation family")->required()->check(CLI::IsMember(families()));
    add_bounds(verify_cmd);
    add_common(verify_cmd);

    auto* table_cmd = app.add_subcommand("table", "Reduction table as JSON lines");
    add_bounds(table_cmd);
    add_common(table_cmd);

    auto* self_cmd = app.add_subcommand("selftest", "Quick internal consistency checks");
    add_common(self_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse_error;
    }

    try {
        if (*reduce_cmd) return cmd_reduce(o);
        if (*eval_cmd) return cmd_eval(o);
        if (*verify_cmd) return cmd_verify(o);
        if (*table_cmd) return cmd_table(o);
        if (*self_cmd) return cmd_selftest(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return parse_error;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return numeric_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failure;
    }
    return failure;
}
