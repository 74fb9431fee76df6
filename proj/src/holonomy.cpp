#include "pvilab/holonomy.hpp"

#include <cmath>

namespace pvi {

Jet2 Jet2::identity() {
    Jet2 j;
    j.linear = Mat::identity(2);
    return j;
}

std::pair<cplx, cplx> Jet2::apply(cplx dt, cplx mu) const {
    cplx mdt = mu * dt, mm = mu * mu;
    cplx out0 = linear.at(0, 0) * dt + linear.at(0, 1) * mu + q[0][0] * mdt + q[0][1] * mm;
    cplx out1 = linear.at(1, 0) * dt + linear.at(1, 1) * mu + q[1][0] * mdt + q[1][1] * mm;
    return {out0, out1};
}

Jet2 jet_compose(const Jet2& outer, const Jet2& inner, double* dropped_dt2) {
    Jet2 out;
    out.linear = outer.linear * inner.linear;

    // Quadratic part of the inner map pushed through the outer linear part.
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            out.q[i][k] = outer.linear.at(i, 0) * inner.q[0][k] +
                          outer.linear.at(i, 1) * inner.q[1][k];
        }
    // Outer quadratic part evaluated on the inner linear image:
    //   (mu' dt') and (mu'^2) expanded in {dt^2, mu dt, mu^2}.
    cplx l00 = inner.linear.at(0, 0), l01 = inner.linear.at(0, 1);
    cplx l10 = inner.linear.at(1, 0), l11 = inner.linear.at(1, 1);
    cplx mdt_dt2 = l10 * l00, mdt_mdt = l10 * l01 + l11 * l00, mdt_mm = l11 * l01;
    cplx mm_dt2 = l10 * l10, mm_mdt = 2.0 * l11 * l10, mm_mm = l11 * l11;
    double dropped = 0.0;
    for (int i = 0; i < 2; ++i) {
        out.q[i][0] += outer.q[i][0] * mdt_mdt + outer.q[i][1] * mm_mdt;
        out.q[i][1] += outer.q[i][0] * mdt_mm + outer.q[i][1] * mm_mm;
        dropped = std::max(dropped,
                           std::abs(outer.q[i][0] * mdt_dt2 + outer.q[i][1] * mm_dt2));
    }
    if (dropped_dt2 != nullptr) *dropped_dt2 = dropped;
    return out;
}

double jet_distance(const Jet2& x, const Jet2& y) {
    double d = max_abs_diff(x.linear, y.linear);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) d = std::max(d, std::abs(x.q[i][k] - y.q[i][k]));
    return d;
}

double jet_deviation_from_identity(const Jet2& j) {
    return jet_distance(j, Jet2::identity());
}

TransversalFrame make_frame(cplx c) {
    double r = 0.25 * std::min(1.0, std::abs(c));
    double side = std::imag(c) > 0.0 ? -1.0 : 1.0;
    return TransversalFrame{c, r * cplx(0.0, side)};
}

HolonomyContext make_holonomy_context(cplx c, const PviParameters& params,
                                      double radius_factor, std::optional<cplx> basepoint) {
    HolonomyContext ctx;
    ctx.c = c;
    ctx.params = params;
    ctx.frame = make_frame(c);
    if (basepoint) ctx.frame.lambda_star = *basepoint;
    std::vector<cplx> punctures = {cplx(0.0), cplx(1.0), c};
    ctx.radius = radius_factor * min_pairwise_distance(punctures);
    ctx.radius = std::min(ctx.radius, 0.45 * std::abs(ctx.frame.lambda_star));
    for (int k = 0; k < 3; ++k)
        ctx.loops[k] = build_puncture_loop(punctures, k, ctx.frame.lambda_star, ctx.radius);
    return ctx;
}

Jet2 holonomy_jet(const HolonomyContext& ctx, const Loop& loop, const OdeOptions& opts) {
    E1System e1 = build_e1(ctx.c);
    E2System e2 = build_e2(ctx.c, ctx.params);
    Mat m1 = ode_continue(e1.system(), loop.path, Mat::identity(2), nullptr, opts);
    Mat m2 = ode_continue(e2.system(), loop.path, Mat::identity(4), nullptr, opts);

    Jet2 jet;
    jet.linear = m1;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) jet.q[i][k] = m2.at(i, 2 + k);
    return jet;
}

std::pair<cplx, cplx> holonomy_nonlinear(const HolonomyContext& ctx, const Loop& loop,
                                         cplx dt, cplx mu, const OdeOptions& opts) {
    const PviParameters params = ctx.params;
    const cplx c = ctx.c;
    VecRhs rhs = [params](cplx lambda, const VecState& u, VecState& du) {
        FoliationRhs f = foliation_rhs(lambda, u[1], u[0], params);
        du[0] = f.dt_dlambda;
        du[1] = f.dmu_dlambda;
    };
    VecState u0{c + dt, mu, 0.0, 0.0};
    VecState u1 = ode_continue_state(rhs, 2, loop.path, u0, opts);
    return {u1[0] - c, u1[1]};
}

InvolutivityReport check_involutivity(const HolonomyContext& ctx, cplx dt_offset,
                                      cplx mu_offset, const OdeOptions& opts) {
    InvolutivityReport report;
    const char* names[3] = {"h0", "h1", "hc"};
    report.max_jet_deviation = 0.0;
    report.max_nonlinear_distance = 0.0;

    for (int k = 0; k < 3; ++k) {
        Jet2 jet = holonomy_jet(ctx, ctx.loops[k], opts);
        double jet_dev = jet_deviation_from_identity(jet_compose(jet, jet));

        Loop twice = ctx.loops[k].traversed_twice();
        auto [dt2, mu2] = holonomy_nonlinear(ctx, twice, dt_offset, mu_offset, opts);
        double dist = std::hypot(std::abs(dt2 - dt_offset), std::abs(mu2 - mu_offset));

        report.rows[k] = InvolutivityRow{names[k], jet_dev, dist};
        report.max_jet_deviation = std::max(report.max_jet_deviation, jet_dev);
        report.max_nonlinear_distance = std::max(report.max_nonlinear_distance, dist);
    }

    Loop hinf = compose_loops(compose_loops(ctx.loops[0], ctx.loops[1]), ctx.loops[2]);
    Loop hinf_sq = hinf.traversed_twice();
    auto [dti, mui] = holonomy_nonlinear(ctx, hinf_sq, dt_offset, mu_offset, opts);
    report.hinf_return_distance =
        std::hypot(std::abs(dti - dt_offset), std::abs(mui - mu_offset));
    return report;
}

RamificationFit ramification_exponent(cplx c, const PviParameters& params, double mu_start,
                                      double mu_end, int samples, const OdeOptions& opts) {
    if (std::abs(params.kappa0) < 1e-12)
        throw DomainError("ramification_exponent: kappa0 must be nonzero");
    if (!(mu_end < mu_start) || samples < 4)
        throw DomainError("ramification_exponent: bad sample window");

    // Leaf through (lambda0, mu0, c) with lambda' = lambda + k0 mu = z0 mu^2.
    const cplx z0 = 1.0;
    const cplx k0 = params.kappa0;
    VecRhs rhs = [params](cplx mu, const VecState& u, VecState& du) {
        // u = (lambda, t); independent variable is mu.
        PolyValues v = eval_polys(u[1], u[0], params);
        cplx denom = v.e_lambda + v.f_lambda * mu + params.big_g * mu * mu;
        du[0] = (2.0 * v.e + v.f * mu) / (mu * denom);
        du[1] = u[1] * (u[1] - 1.0) / denom;
    };

    std::vector<double> log_mu, log_lp, ctrl_lp;
    VecState u{-k0 * mu_start + z0 * mu_start * mu_start, c, 0.0, 0.0};
    double ratio = std::pow(mu_end / mu_start, 1.0 / (samples - 1));
    double mu = mu_start;
    log_mu.push_back(std::log(mu));
    log_lp.push_back(std::log(std::abs(u[0] + k0 * mu)));
    ctrl_lp.push_back(std::log(std::abs(u[0] + (k0 + 1.0) * mu)));
    for (int k = 1; k < samples; ++k) {
        double mu_next = mu_start * std::pow(ratio, k);
        Path leg;
        leg.append(Segment::line(mu, mu_next));
        u = ode_continue_state(rhs, 2, leg, u, opts);
        mu = mu_next;
        log_mu.push_back(std::log(mu));
        log_lp.push_back(std::log(std::abs(u[0] + k0 * mu)));
        ctrl_lp.push_back(std::log(std::abs(u[0] + (k0 + 1.0) * mu)));
    }

    auto slope = [](const std::vector<double>& x, const std::vector<double>& y, size_t lo,
                    size_t hi) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        double n = static_cast<double>(hi - lo);
        for (size_t i = lo; i < hi; ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };

    RamificationFit fit;
    fit.samples = samples;
    fit.exponent = slope(log_mu, log_lp, 0, log_mu.size());
    double inner = slope(log_mu, log_lp, log_mu.size() / 2, log_mu.size());
    fit.half_window_drift = std::abs(fit.exponent - inner);
    fit.control_exponent = slope(log_mu, ctrl_lp, 0, log_mu.size());
    return fit;
}

Jet2 word_jet(const std::array<Jet2, 3>& gens, const std::vector<int>& word) {
    Jet2 jet = Jet2::identity();
    for (int letter : word) jet = jet_compose(gens[letter], jet);
    return jet;
}

JetCommutativityReport check_virtual_commutativity_jets(const HolonomyContext& ctx,
                                                        int length_bound, int samples,
                                                        std::uint64_t seed, double tol,
                                                        const OdeOptions& opts,
                                                        bool parallel) {
    std::array<Jet2, 3> gens = {holonomy_jet(ctx, ctx.loops[0], opts),
                                holonomy_jet(ctx, ctx.loops[1], opts),
                                holonomy_jet(ctx, ctx.loops[2], opts)};

    std::vector<double> even_dev(samples, 0.0), odd_dev(samples, 0.0);
    std::vector<std::string> witness(samples);

    auto body = [&](int i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        std::vector<int> u = random_even_word(rng, length_bound);
        std::vector<int> v = random_even_word(rng, length_bound);
        Jet2 ju = word_jet(gens, u);
        Jet2 jv = word_jet(gens, v);
        even_dev[i] = jet_distance(jet_compose(ju, jv), jet_compose(jv, ju));
        if (even_dev[i] >= tol)
            witness[i] = word_to_string(u) + " , " + word_to_string(v);

        // Parity control: make both words odd by dropping one letter.
        std::vector<int> uo(u.begin(), u.end() - 1);
        std::vector<int> vo(v.begin(), v.end() - 1);
        if (uo.empty()) uo.push_back(0);
        if (vo.empty()) vo.push_back(1);
        Jet2 juo = word_jet(gens, uo);
        Jet2 jvo = word_jet(gens, vo);
        odd_dev[i] = jet_distance(jet_compose(juo, jvo), jet_compose(jvo, juo));
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < samples; ++i) body(i);
    } else {
        for (int i = 0; i < samples; ++i) body(i);
    }

    JetCommutativityReport report;
    report.word_length_bound = length_bound;
    report.sample_count = samples;
    report.seed = seed;
    report.tolerance = tol;
    for (int i = 0; i < samples; ++i) {
        if (even_dev[i] > report.max_even_deviation) report.max_even_deviation = even_dev[i];
        if (odd_dev[i] > report.max_odd_deviation) report.max_odd_deviation = odd_dev[i];
        if (report.witness.empty() && !witness[i].empty()) report.witness = witness[i];
    }
    report.even_pass = report.max_even_deviation < tol;
    report.odd_control_pass = report.max_odd_deviation > tol;
    return report;
}

}  // namespace pvi
