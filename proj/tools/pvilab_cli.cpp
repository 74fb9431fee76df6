// Batch driver: configure a run, execute a verification suite, emit a report.
//
// Exit codes: 0 pass, 1 check failure, 2 usage/config error, 3 numeric failure.

#include <CLI11.hpp>
#include <iostream>

#include "pvilab/suites.hpp"

namespace {

struct RawFlags {
    std::string c, k0, k1, kt, kinf;
    double tol_quad = -1.0, tol_ode = -1.0, tol_report = -1.0, radius_factor = -1.0;
    int word_len = -1, samples = -1;
    long long seed = -1;
    std::string config_path, out, format;
};

void add_common_flags(CLI::App* cmd, RawFlags& raw) {
    cmd->add_option("--c", raw.c, "curve parameter c, as re or re,im");
    cmd->add_option("--kappa0", raw.k0, "kappa_0, as re or re,im");
    cmd->add_option("--kappa1", raw.k1, "kappa_1, as re or re,im");
    cmd->add_option("--kappat", raw.kt, "kappa_t, as re or re,im");
    cmd->add_option("--kappa-inf", raw.kinf, "kappa_infinity, as re or re,im");
    cmd->add_option("--tol-quad", raw.tol_quad, "quadrature tolerance per segment");
    cmd->add_option("--tol-ode", raw.tol_ode, "ODE local error tolerance");
    cmd->add_option("--tol-report", raw.tol_report,
                    "override every report threshold (0 keeps per-check defaults)");
    cmd->add_option("--radius-factor", raw.radius_factor, "keyhole radius factor in (0, 0.5)");
    cmd->add_option("--word-len", raw.word_len, "word length bound for group sampling");
    cmd->add_option("--samples", raw.samples, "sample count for randomized checks");
    cmd->add_option("--seed", raw.seed, "seed for randomized checks");
    cmd->add_option("--config", raw.config_path, "flat key=value config file (flags win)");
    cmd->add_option("--out", raw.out, "output path, - for stdout");
    cmd->add_option("--format", raw.format, "report format: json or csv");
}

pvi::RunConfig build_config(const RawFlags& raw) {
    pvi::RunConfig cfg;
    if (!raw.config_path.empty()) cfg = pvi::load_config_file(raw.config_path, cfg);
    if (!raw.c.empty()) cfg.c = pvi::parse_complex(raw.c);
    if (!raw.k0.empty()) cfg.kappa0 = pvi::parse_complex(raw.k0);
    if (!raw.k1.empty()) cfg.kappa1 = pvi::parse_complex(raw.k1);
    if (!raw.kt.empty()) cfg.kappat = pvi::parse_complex(raw.kt);
    if (!raw.kinf.empty()) cfg.kappa_inf = pvi::parse_complex(raw.kinf);
    if (raw.tol_quad >= 0.0) cfg.tol_quad = raw.tol_quad;
    if (raw.tol_ode >= 0.0) cfg.tol_ode = raw.tol_ode;
    if (raw.tol_report >= 0.0) cfg.tol_report = raw.tol_report;
    if (raw.radius_factor >= 0.0) cfg.radius_factor = raw.radius_factor;
    if (raw.word_len >= 0) cfg.word_len = raw.word_len;
    if (raw.samples >= 0) cfg.samples = raw.samples;
    if (raw.seed >= 0) cfg.seed = static_cast<std::uint64_t>(raw.seed);
    if (!raw.out.empty()) cfg.out = raw.out;
    if (!raw.format.empty()) cfg.format = raw.format;
    cfg.validate();
    return cfg;
}

int run(pvi::SuiteOutcome (*suite)(const pvi::RunConfig&), const RawFlags& raw) {
    pvi::RunConfig cfg;
    try {
        cfg = build_config(raw);
    } catch (const pvi::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        pvi::SuiteOutcome outcome = suite(cfg);
        pvi::emit_report(outcome.report, cfg);
        return outcome.pass ? 0 : 1;
    } catch (const pvi::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pvi::Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification lab for the holonomy at infinity of Painleve VI"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* desc;
        pvi::SuiteOutcome (*fn)(const pvi::RunConfig&);
    };
    const Sub subs[] = {
        {"periods", "fundamental periods and the AGM cross-check", pvi::run_periods},
        {"e1", "first variational equation: closed-form monodromy checks", pvi::run_e1},
        {"e2", "second variational equation: commutators and reductions", pvi::run_e2},
        {"holonomy", "holonomy jets, involutivity, ramification", pvi::run_holonomy},
        {"group", "orbifold group normal forms and realization", pvi::run_group},
        {"verify-all", "every suite, aggregated", pvi::run_verify_all},
    };

    RawFlags raw[6];
    CLI::App* cmds[6];
    for (int i = 0; i < 6; ++i) {
        cmds[i] = app.add_subcommand(subs[i].name, subs[i].desc);
        add_common_flags(cmds[i], raw[i]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit clean, usage errors exit 2
    }

    for (int i = 0; i < 6; ++i)
        if (cmds[i]->parsed()) return run(subs[i].fn, raw[i]);
    return 2;
}
