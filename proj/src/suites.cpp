#include "pvilab/suites.hpp"

#include <cmath>

namespace pvi {

namespace {

QuadratureOptions quad_opts(const RunConfig& cfg) {
    QuadratureOptions o;
    o.tol = cfg.tol_quad;
    return o;
}

OdeOptions ode_opts(const RunConfig& cfg) {
    OdeOptions o;
    o.tol = cfg.tol_ode;
    return o;
}

double pick_tol(const RunConfig& cfg, double per_check_default) {
    return cfg.tol_report > 0.0 ? cfg.tol_report : per_check_default;
}

cplx frame_basepoint(const RunConfig& cfg) {
    if (cfg.basepoint == "auto") return make_frame(cfg.c).lambda_star;
    return parse_complex(cfg.basepoint);
}

json suite_header(const char* suite, const RunConfig& cfg) {
    return json{{"schema_version", kReportSchemaVersion},
                {"suite", suite},
                {"config", config_to_json(cfg)}};
}

bool collect(json& checks, const json& entry) {
    checks.push_back(entry);
    return entry.at("pass").get<bool>();
}

// Two-stage Richardson in sqrt(s) for values sampled at s, s/4, s/16:
// kills the s^(1/2) and s^(3/2) terms of the basepoint dependence.
Mat extrapolate_sqrt(const Mat& v0, const Mat& v1, const Mat& v2) {
    Mat w0 = 2.0 * v1 - v0;
    Mat w1 = 2.0 * v2 - v1;
    return cplx(1.0 / 7.0) * (8.0 * w1 - w0);
}

Loop cycle_commutator(const Cycle& a, const Cycle& b) {
    Loop l = compose_loops(a.loop, b.loop);
    l = compose_loops(l, reverse_loop(a.loop));
    l = compose_loops(l, reverse_loop(b.loop));
    return l;
}

}  // namespace

double agm_real(double a, double g) {
    if (!(a > 0.0) || !(g > 0.0)) throw DomainError("agm: arguments must be positive");
    for (int i = 0; i < 64 && std::abs(a - g) > 4e-16 * g; ++i) {
        double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    return 0.5 * (a + g);
}

bool agm_oracle_applicable(cplx c) {
    return std::imag(c) == 0.0 && c.real() > 0.0 && c.real() < 1.0;
}

Periods agm_period_oracle(double c) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("agm oracle: needs real c in (0,1)");
    double a_val = kPi / agm_real(1.0, std::sqrt(c));
    double b_val = kPi / agm_real(1.0, std::sqrt(1.0 - c));
    double pref = c * (1.0 - c);
    return Periods{pref * cplx(b_val, -a_val), pref * cplx(b_val, 0.0)};
}

E1ClosedFormComparison compare_e1_closed_form(cplx c, const QuadratureOptions& qopts,
                                              const OdeOptions& oopts) {
    E1ClosedFormComparison cmp;
    cmp.periods = fundamental_periods(c, qopts);

    E1System e1 = build_e1(c);
    std::vector<cplx> punctures = {cplx(0.0), cplx(1.0), c};
    LinearSystemOnSphere sys{punctures, e1.system(), c};

    Mat t0[3], t1[3], tc[3];
    for (int k = 0; k < 3; ++k) {
        double s = 1e-3 / std::pow(4.0, k);
        cplx p = c * s;
        MonodromyRep rep = monodromy_representation(sys, p, 0.4 * std::abs(p), oopts);
        Mat xp = closed_form_X_at(e1, BranchState::at(c, p));
        t0[k] = to_solution_frame(rep.m0, xp);
        t1[k] = to_solution_frame(rep.m1, xp);
        tc[k] = to_solution_frame(rep.mc, xp);
    }
    cmp.t0_hat = extrapolate_sqrt(t0[0], t0[1], t0[2]);
    cmp.t1_hat = extrapolate_sqrt(t1[0], t1[1], t1[2]);
    cmp.tc_hat = extrapolate_sqrt(tc[0], tc[1], tc[2]);

    ClosedFormT closed = closed_form_T(cmp.periods);
    cmp.max_deviation = std::max({max_abs_diff(cmp.t0_hat, closed.t0),
                                  max_abs_diff(cmp.t1_hat, closed.t1),
                                  max_abs_diff(cmp.tc_hat, closed.tc)});
    return cmp;
}

SuiteOutcome run_periods(const RunConfig& config) {
    config.validate();
    QuadratureOptions qopts = quad_opts(config);

    json report = suite_header("periods", config);
    json checks = json::array();
    bool pass = true;

    Periods periods = fundamental_periods(config.c, qopts, config.radius_factor);
    Periods deep = fundamental_periods(config.c, qopts.deeper(), config.radius_factor);
    report["pi1"] = complex_to_json(periods.pi1);
    report["pi2"] = complex_to_json(periods.pi2);
    report["ratio"] = complex_to_json(periods.pi2 / periods.pi1);

    double tol_ratio = pick_tol(config, 1e-9);
    pass &= collect(checks, check_entry("periods_independent_over_R",
                                        std::abs(std::imag(periods.pi2 / periods.pi1)),
                                        tol_ratio, std::abs(std::imag(periods.pi2 / periods.pi1)) > tol_ratio));

    double self_diff = std::max(std::abs(periods.pi1 - deep.pi1),
                                std::abs(periods.pi2 - deep.pi2));
    double tol_self = pick_tol(config, 1e-11);
    pass &= collect(checks,
                    check_entry("doubled_depth_self_consistency", self_diff, tol_self,
                                self_diff < tol_self));

    report["agm_oracle_applicable"] = agm_oracle_applicable(config.c);
    if (agm_oracle_applicable(config.c)) {
        Periods oracle = agm_period_oracle(config.c.real());
        report["agm_pi1"] = complex_to_json(oracle.pi1);
        report["agm_pi2"] = complex_to_json(oracle.pi2);
        double diff = std::max(std::abs(periods.pi1 - oracle.pi1),
                               std::abs(periods.pi2 - oracle.pi2));
        double tol = pick_tol(config, 1e-10);
        pass &= collect(checks, check_entry("agm_oracle_match", diff, tol, diff < tol));
    }

    report["checks"] = checks;
    report["pass"] = pass;
    return SuiteOutcome{report, pass};
}

SuiteOutcome run_e1(const RunConfig& config) {
    config.validate();
    QuadratureOptions qopts = quad_opts(config);
    OdeOptions oopts = ode_opts(config);

    json report = suite_header("e1", config);
    json checks = json::array();
    bool pass = true;

    E1ClosedFormComparison cmp = compare_e1_closed_form(config.c, qopts, oopts);
    report["pi1"] = complex_to_json(cmp.periods.pi1);
    report["pi2"] = complex_to_json(cmp.periods.pi2);
    report["t0"] = matrix_to_json(cmp.t0_hat);
    report["t1"] = matrix_to_json(cmp.t1_hat);
    report["tc"] = matrix_to_json(cmp.tc_hat);
    double tol_closed = pick_tol(config, 1e-7);
    pass &= collect(checks, check_entry("closed_form_match", cmp.max_deviation, tol_closed,
                                        cmp.max_deviation < tol_closed));

    // Involutions and the product relation at the standard frame basepoint.
    E1System e1 = build_e1(config.c);
    std::vector<cplx> punctures = {cplx(0.0), cplx(1.0), config.c};
    LinearSystemOnSphere sys{punctures, e1.system(), config.c};
    cplx base = frame_basepoint(config);
    double radius = config.radius_factor * min_pairwise_distance(punctures);
    radius = std::min(radius, 0.45 * std::abs(base));
    MonodromyRep rep = monodromy_representation(sys, base, radius, oopts);

    double tol_inv = pick_tol(config, 1e-8);
    double worst_sq = 0.0;
    for (int k = 0; k < 3; ++k)
        worst_sq = std::max(worst_sq,
                            deviation_from_identity(rep.generator(k) * rep.generator(k)));
    pass &= collect(checks, check_entry("generator_squares_identity", worst_sq, tol_inv,
                                        worst_sq < tol_inv));
    Mat prod = rep.m0 * rep.m1 * rep.mc;
    double hinf = deviation_from_identity(prod * prod);
    pass &= collect(checks,
                    check_entry("product_relation_identity", hinf, tol_inv, hinf < tol_inv));

    // det M = exp of the integrated trace around each loop.
    double tol_det = pick_tol(config, 1e-9);
    double worst_det = 0.0;
    for (int k = 0; k < 3; ++k) {
        Form tr = Form::rational([e1](cplx l) { return e1.a(l); });
        cplx loop_trace = integrate_form(tr, rep.loop(k).path, nullptr, qopts);
        worst_det = std::max(worst_det,
                             std::abs(det(rep.generator(k)) - std::exp(loop_trace)));
    }
    pass &= collect(checks, check_entry("determinant_trace_consistency", worst_det, tol_det,
                                        worst_det < tol_det));

    int length = config.word_len > 0 ? config.word_len : 12;
    int samples = config.samples > 0 ? config.samples : 200;
    double tol_comm = pick_tol(config, 1e-7);
    GroupCheckReport gc = check_virtual_commutativity(rep, length, samples, config.seed,
                                                      tol_comm);
    report["commutativity"] = json{{"word_length_bound", gc.word_length_bound},
                                   {"samples", gc.sample_count},
                                   {"seed", gc.seed},
                                   {"max_deviation", gc.max_deviation},
                                   {"witness", gc.witness}};
    pass &= collect(checks, check_entry("even_word_commutativity", gc.max_deviation,
                                        tol_comm, gc.pass));

    report["checks"] = checks;
    report["pass"] = pass;
    return SuiteOutcome{report, pass};
}

SuiteOutcome run_e2(const RunConfig& config) {
    config.validate();
    QuadratureOptions qopts = quad_opts(config);
    OdeOptions oopts = ode_opts(config);

    json report = suite_header("e2", config);
    json checks = json::array();
    bool pass = true;

    PviParameters params =
        derive_parameters(config.kappa0, config.kappa1, config.kappat, config.kappa_inf);
    E2System e2 = build_e2(config.c, params);
    TriangularE2 tri = triangularize(e2);
    EllipticCurve curve(config.c);

    // Generator involutions for the linearized 4x4 system.
    std::vector<cplx> punctures = {cplx(0.0), cplx(1.0), config.c};
    LinearSystemOnSphere sys{punctures, e2.system(), config.c};
    cplx base = frame_basepoint(config);
    double radius = config.radius_factor * min_pairwise_distance(punctures);
    radius = std::min(radius, 0.45 * std::abs(base));
    MonodromyRep rep = monodromy_representation(sys, base, radius, oopts);

    double tol_inv = pick_tol(config, 1e-6);
    double worst_sq = 0.0;
    for (int k = 0; k < 3; ++k)
        worst_sq = std::max(worst_sq,
                            deviation_from_identity(rep.generator(k) * rep.generator(k)));
    pass &= collect(checks, check_entry("generator_squares_identity", worst_sq, tol_inv,
                                        worst_sq < tol_inv));
    Mat prod = rep.m0 * rep.m1 * rep.mc;
    double hinf = deviation_from_identity(prod * prod);
    pass &= collect(checks,
                    check_entry("product_relation_identity", hinf, tol_inv, hinf < tol_inv));

    // Commutator of the lifted basis cycles must act trivially, two routes.
    Cycle c01 = make_cycle(curve, CycleId::Cycle01, config.radius_factor, qopts);
    Cycle c0c = make_cycle(curve, CycleId::Cycle0c, config.radius_factor, qopts);
    Loop comm = cycle_commutator(c01, c0c);

    LinearSystemOnSphere tri_sys{punctures, tri.system(), config.c};
    Mat m_ode = numeric_monodromy(tri_sys, comm, oopts);
    Mat m_iter = e2_monodromy_iterated(tri, comm, qopts);
    double dev_ode = deviation_from_identity(m_ode);
    double dev_iter = deviation_from_identity(m_iter);
    double route_diff = max_abs_diff(m_ode, m_iter);
    double tol_comm_loop = pick_tol(config, 1e-6);
    double tol_routes = pick_tol(config, 1e-7);
    pass &= collect(checks, check_entry("cycle_commutator_identity_ode", dev_ode,
                                        tol_comm_loop, dev_ode < tol_comm_loop));
    pass &= collect(checks, check_entry("cycle_commutator_identity_iterated", dev_iter,
                                        tol_comm_loop, dev_iter < tol_comm_loop));
    pass &= collect(checks, check_entry("route_agreement", route_diff, tol_routes,
                                        route_diff < tol_routes));

    // Closed-loop Y entries against their period-polynomial predictions.
    double tol_red = pick_tol(config, 1e-6);
    double tol_res = pick_tol(config, 1e-8);
    for (const Cycle* cyc : {&c01, &c0c}) {
        EllipticReductionReport red = elliptic_reduction(tri, *cyc, qopts);
        const char* tag = cyc->id == CycleId::Cycle01 ? "cycle01" : "cycle0c";
        double worst =
            std::max({red.y13.diff, red.y24.diff, red.y14.diff});
        pass &= collect(checks, check_entry(std::string("elliptic_reduction_") + tag, worst,
                                            tol_red, worst < tol_red));
        pass &= collect(checks, check_entry(std::string("residue_free_") + tag,
                                            red.max_residue, tol_res,
                                            red.max_residue < tol_res));
    }

    // Shuffle identity sweep.
    int draws = config.samples > 0 ? config.samples : 100;
    double tol_shuffle = pick_tol(config, 1e-10);
    double shuffle_worst = shuffle_residual_sweep(draws, config.seed, qopts);
    pass &= collect(checks, check_entry("shuffle_identity", shuffle_worst, tol_shuffle,
                                        shuffle_worst < tol_shuffle));

    // Even-word commutativity of the 4x4 representation.
    int length = config.word_len > 0 ? config.word_len : 8;
    int samples = config.samples > 0 ? config.samples : 100;
    double tol_comm = pick_tol(config, 1e-5);
    GroupCheckReport gc = check_virtual_commutativity(rep, length, samples, config.seed,
                                                      tol_comm);
    report["commutativity"] = json{{"word_length_bound", gc.word_length_bound},
                                   {"samples", gc.sample_count},
                                   {"seed", gc.seed},
                                   {"max_deviation", gc.max_deviation},
                                   {"witness", gc.witness}};
    pass &= collect(checks, check_entry("even_word_commutativity", gc.max_deviation,
                                        tol_comm, gc.pass));

    report["checks"] = checks;
    report["pass"] = pass;
    return SuiteOutcome{report, pass};
}

SuiteOutcome run_holonomy(const RunConfig& config) {
    config.validate();
    OdeOptions oopts = ode_opts(config);

    json report = suite_header("holonomy", config);
    json checks = json::array();
    bool pass = true;

    PviParameters params =
        derive_parameters(config.kappa0, config.kappa1, config.kappat, config.kappa_inf);
    std::optional<cplx> base;
    if (config.basepoint != "auto") base = parse_complex(config.basepoint);
    HolonomyContext ctx = make_holonomy_context(config.c, params, config.radius_factor, base);

    // Involutivity at jet and nonlinear level.
    InvolutivityReport inv = check_involutivity(ctx, 0.0, 1e-3, oopts);
    json rows = json::array();
    for (const auto& row : inv.rows)
        rows.push_back(json{{"generator", row.generator},
                            {"jet_square_deviation", row.jet_square_deviation},
                            {"nonlinear_return_distance", row.nonlinear_return_distance}});
    report["involutivity"] = rows;
    double tol_jet = pick_tol(config, 1e-6);
    double tol_nl = pick_tol(config, 1e-8);
    pass &= collect(checks, check_entry("jet_squares_identity", inv.max_jet_deviation,
                                        tol_jet, inv.max_jet_deviation < tol_jet));
    pass &= collect(checks,
                    check_entry("nonlinear_double_return", inv.max_nonlinear_distance,
                                tol_nl, inv.max_nonlinear_distance < tol_nl));

    // h_inf = h0 h1 hc squared, from a two-coordinate offset.
    Loop hinf = compose_loops(compose_loops(ctx.loops[0], ctx.loops[1]), ctx.loops[2]);
    auto [dt_back, mu_back] =
        holonomy_nonlinear(ctx, hinf.traversed_twice(), cplx(1e-4), cplx(1e-3), oopts);
    double hinf_dist = std::hypot(std::abs(dt_back - 1e-4), std::abs(mu_back - 1e-3));
    double tol_hinf = pick_tol(config, 1e-7);
    pass &= collect(checks,
                    check_entry("hinf_double_return", hinf_dist, tol_hinf,
                                hinf_dist < tol_hinf));

    // Jet vs nonlinear: the discrepancy must scale cubically in the offset.
    {
        Jet2 j0 = holonomy_jet(ctx, ctx.loops[0], oopts);
        double err[2];
        double scales[2] = {1e-3, 5e-4};
        for (int k = 0; k < 2; ++k) {
            cplx dt = 0.3 * scales[k], mu = scales[k];
            auto [jdt, jmu] = j0.apply(dt, mu);
            auto [ndt, nmu] = holonomy_nonlinear(ctx, ctx.loops[0], dt, mu, oopts);
            err[k] = std::hypot(std::abs(jdt - ndt), std::abs(jmu - nmu));
        }
        double order = std::log(err[0] / err[1]) / std::log(scales[0] / scales[1]);
        report["jet_vs_nonlinear"] = json{{"err_course", err[0]},
                                          {"err_fine", err[1]},
                                          {"fitted_order", order}};
        pass &= collect(checks, check_entry("jet_matches_nonlinear_cubically", order, 2.5,
                                            order > 2.5));
    }

    // Even-word jet commutativity, with the odd-word parity control.
    int length = config.word_len > 0 ? config.word_len : 8;
    int samples = config.samples > 0 ? config.samples : 100;
    double tol_comm = pick_tol(config, 1e-5);
    JetCommutativityReport jc = check_virtual_commutativity_jets(ctx, length, samples,
                                                                 config.seed, tol_comm, oopts);
    report["jet_commutativity"] = json{{"word_length_bound", jc.word_length_bound},
                                       {"samples", jc.sample_count},
                                       {"seed", jc.seed},
                                       {"max_even_deviation", jc.max_even_deviation},
                                       {"max_odd_deviation", jc.max_odd_deviation},
                                       {"witness", jc.witness}};
    pass &= collect(checks, check_entry("even_word_jet_commutativity", jc.max_even_deviation,
                                        tol_comm, jc.even_pass));
    pass &= collect(checks, check_entry("odd_word_parity_control", jc.max_odd_deviation,
                                        tol_comm, jc.odd_control_pass));

    // Ramification exponent at a0.
    RamificationFit fit = ramification_exponent(config.c, params, 1e-2, 2.5e-4, 25, oopts);
    report["ramification"] = json{{"exponent", fit.exponent},
                                  {"half_window_drift", fit.half_window_drift},
                                  {"control_exponent", fit.control_exponent},
                                  {"samples", fit.samples}};
    bool exp_ok = fit.exponent > 1.9 && fit.exponent < 2.1;
    pass &= collect(checks, check_entry("ramification_exponent_near_2",
                                        fit.exponent, 2.1, exp_ok));
    pass &= collect(checks, check_entry("ramification_window_stability",
                                        fit.half_window_drift, 0.05,
                                        fit.half_window_drift < 0.05));
    bool ctrl_ok = !(fit.control_exponent > 1.9 && fit.control_exponent < 2.1);
    pass &= collect(checks, check_entry("ramification_axis_control",
                                        fit.control_exponent, 1.9, ctrl_ok));

    // kappa0 = 0 regime: the jet-level involutivity persists.
    {
        PviParameters flat = derive_parameters(0.0, config.kappa1, config.kappat,
                                               config.kappa_inf);
        HolonomyContext ctx0 = make_holonomy_context(config.c, flat, config.radius_factor);
        double worst = 0.0;
        for (int k = 0; k < 3; ++k) {
            Jet2 jet = holonomy_jet(ctx0, ctx0.loops[k], oopts);
            worst = std::max(worst, jet_deviation_from_identity(jet_compose(jet, jet)));
        }
        pass &= collect(checks, check_entry("jet_squares_identity_kappa0_zero", worst,
                                            tol_jet, worst < tol_jet));
    }

    report["checks"] = checks;
    report["pass"] = pass;
    return SuiteOutcome{report, pass};
}

SuiteOutcome run_group(const RunConfig& config) {
    config.validate();
    QuadratureOptions qopts = quad_opts(config);

    json report = suite_header("group", config);
    json checks = json::array();
    bool pass = true;

    int max_len = config.word_len > 0 ? std::min(config.word_len, 12) : 10;
    RelationCheckReport rel = relation_invariance(max_len, 10000, config.seed);
    report["relation_invariance"] = json{{"exhaustive_max_len", max_len},
                                         {"words_checked", rel.words_checked},
                                         {"insertions_checked", rel.insertions_checked},
                                         {"witness", rel.witness}};
    pass &= collect(checks, check_entry("relator_insertion_invariance",
                                        rel.pass ? 0.0 : 1.0, 0.5, rel.pass));

    int pairs = config.samples > 0 ? config.samples : 1000;
    KernelFuzzReport fuzz = kernel_commutator_fuzz(pairs, 24, config.seed);
    report["kernel_fuzz"] = json{{"pairs", fuzz.pairs},
                                 {"max_len", fuzz.max_len},
                                 {"seed", fuzz.seed},
                                 {"witness", fuzz.witness}};
    pass &= collect(checks, check_entry("kernel_commutators_identity",
                                        fuzz.pass ? 0.0 : 1.0, 0.5, fuzz.pass));

    // Matrix realization against the closed-form monodromy generators.
    Periods periods = fundamental_periods(config.c, qopts, config.radius_factor);
    ClosedFormT closed = closed_form_T(periods);
    double worst = 0.0;
    worst = std::max(worst, max_abs_diff(realize(reduce("a"), periods), closed.t0));
    worst = std::max(worst, max_abs_diff(realize(reduce("b"), periods), closed.t1));
    worst = std::max(worst, max_abs_diff(realize(reduce("c"), periods), closed.tc));
    double tol_real = pick_tol(config, 1e-12);
    pass &= collect(checks, check_entry("realize_matches_closed_form_T", worst, tol_real,
                                        worst < tol_real));

    // Homomorphism spot-check: matrix of a product is the product of matrices.
    double worst_hom = 0.0;
    double scale = std::max(std::abs(periods.pi1), std::abs(periods.pi2));
    for (int i = 0; i < 100; ++i) {
        SampleRng rng(config.seed, 1000 + static_cast<std::uint64_t>(i));
        std::string u, v;
        for (int k = 0, lu = 1 + rng.below(12); k < lu; ++k)
            u.push_back(static_cast<char>('a' + rng.below(3)));
        for (int k = 0, lv = 1 + rng.below(12); k < lv; ++k)
            v.push_back(static_cast<char>('a' + rng.below(3)));
        Mat lhs = realize(reduce(u + v), periods);
        Mat rhs = realize(reduce(u), periods) * realize(reduce(v), periods);
        worst_hom = std::max(worst_hom, max_abs_diff(lhs, rhs));
    }
    double tol_hom = pick_tol(config, 1e-9) * std::max(1.0, scale);
    pass &= collect(checks, check_entry("realize_homomorphism", worst_hom, tol_hom,
                                        worst_hom < tol_hom));

    report["model_note"] =
        "G is computed through its Z^2 x| Z_2 normal form; faithfulness of the model "
        "is a modeling assumption (exact sequence evidence), not a verified fact.";

    report["checks"] = checks;
    report["pass"] = pass;
    return SuiteOutcome{report, pass};
}

SuiteOutcome run_verify_all(const RunConfig& config) {
    config.validate();
    json report = suite_header("verify-all", config);
    json suites = json::array();
    json failures = json::array();
    bool pass = true;

    struct Entry {
        const char* name;
        SuiteOutcome (*fn)(const RunConfig&);
    };
    const Entry entries[] = {{"periods", run_periods}, {"e1", run_e1},
                             {"e2", run_e2},           {"holonomy", run_holonomy},
                             {"group", run_group}};
    for (const Entry& entry : entries) {
        SuiteOutcome outcome = entry.fn(config);
        suites.push_back(outcome.report);
        if (!outcome.pass) failures.push_back(entry.name);
        pass &= outcome.pass;
    }
    report["suites"] = suites;
    report["failures"] = failures;
    report["pass"] = pass;
    return SuiteOutcome{report, pass};
}

}  // namespace pvi
