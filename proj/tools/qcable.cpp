// Command-line surface for the cabled-invariant engine: single values,
// verification suite, growth sweeps, and the asymptotic model.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcable/asymptotics.hpp"
#include "qcable/cable.hpp"
#include "qcable/suite.hpp"

using namespace qcable;

namespace {

Prec env_default_prec() {
    const char* e = std::getenv("QCABLE_PREC");
    if (!e) return 192;
    long v = std::atol(e);
    return v >= 64 ? static_cast<Prec>(v) : 192;
}

bool parse_range(const std::string& spec, int& lo, int& hi, int& step) {
    int a = 0, b = 0, s = 1;
    if (std::sscanf(spec.c_str(), "%d:%d:%d", &a, &b, &s) == 3 ||
        std::sscanf(spec.c_str(), "%d:%d", &a, &b) == 2) {
        lo = a;
        hi = b;
        step = s;
        return lo >= 1 && step >= 1;
    }
    return false;
}

ParityFilter parse_parity(const std::string& s) {
    if (s == "auto") return ParityFilter::Auto;
    if (s == "odd") return ParityFilter::Odd;
    if (s == "even") return ParityFilter::Even;
    if (s == "all") return ParityFilter::All;
    throw CLI::ValidationError("--parity must be auto|odd|even|all");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw CLI::ValidationError("--format must be csv|json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kashaev invariants of (m,2)-cables: exact and numeric engine"};
    app.require_subcommand(1);

    std::string knot = "fig8", extra_knot, method = "eq03", flavor = "lhopital";
    std::string parity = "auto", format = "json", nrange, only;
    long m = 0;
    int N = 0;
    long prec = static_cast<long>(env_default_prec());
    int cap_mult = 16;
    double alpha = 0.55;
    std::vector<long> m_multi;
    std::vector<double> xs;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--prec", prec, "initial precision in bits (env QCABLE_PREC)");
        cmd->add_option("--format", format, "output format: csv|json");
    };

    auto* c_kash = app.add_subcommand("kashaev", "Kashaev invariant of a knot");
    c_kash->add_option("--knot", knot, "built-in name (fig8, unknot) or knot file");
    c_kash->add_option("-N,--color", N, "color")->required();
    add_common(c_kash);

    auto* c_cable = app.add_subcommand("cable", "Kashaev invariant of the (m,2)-cable");
    c_cable->add_option("--knot", knot, "built-in name or knot file");
    c_cable->add_option("-m,--twist", m, "cable parameter m")->required();
    c_cable->add_option("-N,--color", N, "color")->required();
    c_cable->add_option("--method", method, "eq03|oracle|closed-form");
    c_cable->add_option("--flavor", flavor, "oracle flavor: lhopital|limit");
    c_cable->add_option("--prec-cap", cap_mult, "adaptive precision cap multiplier");
    add_common(c_cable);

    auto* c_growth = app.add_subcommand("growth", "growth-rate sweep over N");
    c_growth->add_option("--knot", knot, "built-in name or knot file");
    c_growth->add_option("-m,--twist", m_multi, "cable parameter(s); repeatable");
    c_growth->add_option("--N-range", nrange, "a:b:step")->required();
    c_growth->add_option("--parity", parity, "auto|odd|even|all");
    c_growth->add_option("--alpha", alpha, "error-exponent parameter in (1/2,2/3)");
    add_common(c_growth);

    auto* c_pred = app.add_subcommand("predict", "leading-order prediction");
    c_pred->add_option("-m,--twist", m, "cable parameter m")->required();
    c_pred->add_option("-N,--color", N, "color")->required();
    c_pred->add_option("--alpha", alpha, "error-exponent parameter");
    add_common(c_pred);

    auto* c_lob = app.add_subcommand("lobachevsky", "Lobachevsky function values");
    c_lob->add_option("x", xs, "arguments in radians")->required();
    add_common(c_lob);

    auto* c_verify = app.add_subcommand("verify", "run the verification suite");
    c_verify->add_option("--knot", knot, "knot for the cable checks");
    c_verify->add_option("--extra-knot", extra_knot, "second knot for the vanishing check");
    c_verify->add_option("--only", only, "run a single named check");
    c_verify->add_option("--alpha", alpha, "error-exponent parameter");
    c_verify->add_option("--prec-cap", cap_mult, "adaptive precision cap multiplier");
    add_common(c_verify);

    auto* c_show = app.add_subcommand("show-knot", "print a knot's data");
    c_show->add_option("--knot", knot, "built-in name or knot file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_kash->parsed()) {
            auto r = kashaev_knot(resolve_knot(knot), N, static_cast<Prec>(prec));
            std::cout << to_json(r).dump(1) << "\n";
            return 0;
        }
        if (c_cable->parsed()) {
            auto K = resolve_knot(knot);
            CableInvariantResult r;
            if (method == "eq03") {
                r = kashaev_cable_eq03(K, m, N, {static_cast<Prec>(prec), cap_mult});
            } else if (method == "oracle") {
                r = kashaev_cable_oracle(K, m, N, static_cast<Prec>(prec),
                                         flavor == "limit" ? OracleFlavor::NumericLimit
                                                           : OracleFlavor::LHopitalExact);
            } else if (method == "closed-form") {
                Complex v = theorem11_closed_form(K, m, N, static_cast<Prec>(prec));
                r.m = static_cast<int>(m);
                r.N = N;
                r.method = "closed-form";
                r.value = v;
                r.max_term = abs(v);
                r.cancellation_ratio = Real(1, 64);
                r.error_bound = Real(64);
                r.prec_used = static_cast<Prec>(prec);
                r.in_sm = in_S_m(m, N);
            } else {
                std::cerr << "unknown --method " << method << "\n";
                return 2;
            }
            std::cout << to_json(r).dump(1) << "\n";
            return r.resolved ? 0 : 2;
        }
        if (c_growth->parsed()) {
            RunConfig cfg;
            cfg.prec_initial = static_cast<Prec>(prec);
            cfg.alpha = alpha;
            cfg.knot = knot;
            cfg.parity = parse_parity(parity);
            cfg.format = parse_format(format);
            if (!m_multi.empty()) cfg.growth_m = m_multi;
            if (!parse_range(nrange, cfg.growth_N_min, cfg.growth_N_max, cfg.growth_N_step)) {
                std::cerr << "bad --N-range, expected a:b:step with a>=1\n";
                return 2;
            }
            auto data = growth_sweep(cfg);
            std::cout << emit_growth(data, cfg.format);
            return 0;
        }
        if (c_pred->parsed()) {
            auto p = predict_leading(m, N, static_cast<Prec>(prec), alpha);
            nlohmann::json j{{"m", p.m},
                             {"N", p.N},
                             {"parity_factor_re", p.parity_factor.re().str(20)},
                             {"parity_factor_im", p.parity_factor.im().str(20)},
                             {"parity_zero", p.parity.is_zero},
                             {"C_re", p.C_const.re().str(20)},
                             {"C_im", p.C_const.im().str(20)},
                             {"l_star", p.l_star},
                             {"log_E_leading", log(p.E_leading).str(20)},
                             {"predicted_re", p.predicted_value.re().str(20)},
                             {"predicted_im", p.predicted_value.im().str(20)},
                             {"alpha", p.alpha},
                             {"error_envelope", std::pow(static_cast<double>(N),
                                                         3 * alpha - 2)}};
            std::cout << j.dump(1) << "\n";
            return 0;
        }
        if (c_lob->parsed()) {
            Prec p = static_cast<Prec>(prec);
            if (parse_format(format) == OutputFormat::Csv) {
                std::cout << "x,L\n";
                for (double x : xs)
                    std::cout << Real(x, p).str(17) << "," << lobachevsky(x, p).str(20) << "\n";
            } else {
                nlohmann::json rows = nlohmann::json::array();
                for (double x : xs)
                    rows.push_back(nlohmann::json{{"x", Real(x, p).str(17)},
                                                  {"L", lobachevsky(x, p).str(20)}});
                std::cout << rows.dump(1) << "\n";
            }
            return 0;
        }
        if (c_verify->parsed()) {
            RunConfig cfg;
            cfg.prec_initial = static_cast<Prec>(prec);
            cfg.prec_cap_multiplier = cap_mult;
            cfg.alpha = alpha;
            cfg.knot = knot;
            cfg.extra_knot = extra_knot;
            cfg.format = parse_format(format);
            SuiteReport rep = run_verification_suite(cfg, only);
            std::cout << emit_report(rep, cfg.format);
            return rep.exit_code();
        }
        if (c_show->parsed()) {
            std::cout << to_json(resolve_knot(knot)).dump(1) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
