#include "pvilab/iterated.hpp"

#include <cmath>

#include "pvilab/monodromy.hpp"

namespace pvi {

namespace {

// Form indices for the triangular system; w34 reuses w12.
enum : int { kW12 = 0, kW13 = 1, kW14 = 2, kW23 = 3, kW24 = 4 };

std::vector<Form> triangular_forms(const TriangularE2& tri) {
    return {tri.w12().as_form(), tri.w13().as_form(), tri.w14().as_form(),
            tri.w23().as_form(), tri.w24().as_form()};
}

const std::vector<Word>& y_words() {
    static const std::vector<Word> words = {
        {kW12},       {kW23},       {kW14},       {kW13},       {kW24},
        {kW12, kW23}, {kW23, kW12}, {kW12, kW24}, {kW13, kW12}, {kW12, kW23, kW12},
    };
    return words;
}

YMatrixEntries assemble(const WordValues& v) {
    YMatrixEntries y;
    y.y12 = v.at({kW12});
    y.y34 = v.at({kW12});
    y.y23 = v.at({kW23});
    y.y13 = v.at({kW12, kW23}) + v.at({kW13});
    y.y24 = v.at({kW23, kW12}) + v.at({kW24});
    y.y14 = v.at({kW12, kW23, kW12}) + v.at({kW12, kW24}) + v.at({kW13, kW12}) +
            v.at({kW14});
    return y;
}

}  // namespace

Mat YMatrixEntries::matrix() const {
    Mat m = Mat::identity(4);
    m.at(0, 1) = y12;
    m.at(0, 2) = y13;
    m.at(0, 3) = y14;
    m.at(1, 2) = y23;
    m.at(1, 3) = y24;
    m.at(2, 3) = y34;
    return m;
}

YMatrixEntries y_matrix(const TriangularE2& tri, const Path& path, BranchState* branch,
                        const QuadratureOptions& opts) {
    if (path.empty()) return YMatrixEntries{};
    WordValues v = path_signature(path, triangular_forms(tri), y_words(), branch, opts);
    return assemble(v);
}

Mat e2_monodromy_iterated(const TriangularE2& tri, const Loop& loop,
                          const QuadratureOptions& opts) {
    EllipticCurve curve(tri.c);
    LiftResult lift = lift_loop(curve, loop);
    if (!lift.closes)
        throw DomainError("e2_monodromy_iterated: loop does not lift closed on S_c "
                          "(square the loop first)");
    BranchState b = BranchState::at(tri.c, loop.basepoint);
    YMatrixEntries y = y_matrix(tri, loop.path, &b, opts);
    return y.matrix();
}

ExactReductionRecord reduce_exact(const TriangularE2& tri, const CurveForm& omega,
                                  const Path& path, const QuadratureOptions& opts) {
    Form w23 = tri.w23().as_form();
    Form w = omega.as_form();
    cplx c = tri.c;

    BranchState b0 = BranchState::at(c, path.start());
    cplx lhs = iterated_integral({w23, w}, path, &b0, opts);

    BranchState b1 = BranchState::at(c, path.start());
    cplx int_w = integrate_form(w, path, &b1, opts);

    CurveForm hw = omega;
    auto r = omega.r;
    hw.r = [r, c](cplx lambda) { return triangular_h(c, lambda) * r(lambda); };
    BranchState b2 = BranchState::at(c, path.start());
    cplx int_hw = integrate_form(hw.as_form(), path, &b2, opts);

    ExactReductionRecord rec;
    rec.lhs = lhs;
    rec.rhs = triangular_h(c, path.end()) * int_w - int_hw;
    rec.diff = std::abs(rec.lhs - rec.rhs);
    return rec;
}

EllipticReductionReport elliptic_reduction(const TriangularE2& tri, const Cycle& cycle,
                                           const QuadratureOptions& opts) {
    const cplx c = tri.c;
    EllipticCurve curve(c);
    const E2System& sys = tri.base;
    const Path& path = cycle.loop.path;
    const cplx base = cycle.loop.basepoint;

    // Direct iterated values.
    std::vector<Form> forms = triangular_forms(tri);
    BranchState bw = cycle.base_branch;
    WordValues v = path_signature(path, forms, y_words(), &bw, opts);
    YMatrixEntries direct = assemble(v);

    // Single loop integrals of the reduced forms.
    auto over_y = [&](std::function<cplx(cplx)> r) {
        CurveForm f;
        f.r = std::move(r);
        f.over_y = true;
        return f;
    };
    auto loop_int = [&](const CurveForm& f) {
        BranchState b = cycle.base_branch;
        return integrate_form(f.as_form(), path, &b, opts);
    };

    cplx s12 = v.at({kW12});
    cplx s13 = v.at({kW13});
    cplx s14 = v.at({kW14});
    cplx s24 = v.at({kW24});

    // h w12 = h c(c-1)/(2y) dl;  phi w12 = c(c-1) F / (2E) dl;  w0 = dl / y.
    cplx half_cc = 0.5 * c * (c - 1.0);
    cplx sh12 = loop_int(over_y([c, half_cc](cplx l) { return triangular_h(c, l) * half_cc; }));
    cplx s0 = loop_int(over_y([](cplx) { return cplx(1.0); }));
    PviParameters params = sys.params;
    Form phi_w12 = Form::rational([c, half_cc, params](cplx l) {
        PolyValues pv = eval_polys(c, l, params);
        return half_cc * pv.f / pv.e;
    });
    BranchState bphi = cycle.base_branch;
    cplx sphi12 = integrate_form(phi_w12, path, &bphi, opts);

    cplx h_p = triangular_h(c, base);
    cplx y_p = cycle.base_branch.y();
    cplx phi_p = eval_polys(c, base, params).f / y_p;

    EllipticReductionReport rep;
    rep.y13.direct = direct.y13;
    rep.y13.predicted = sh12 - h_p * s12 + s13;
    rep.y13.diff = std::abs(rep.y13.predicted - rep.y13.direct);

    rep.y24.direct = direct.y24;
    rep.y24.predicted = h_p * s12 - sh12 + s24;
    rep.y24.diff = std::abs(rep.y24.predicted - rep.y24.direct);

    // Y14 via the triple reduction and the cohomology split of wbar:
    //   wbar = (-2hb + d - g) y dl = ((1-2c)/2) dl/y + (1/2) d(F/y).
    rep.y14.direct = direct.y14;
    rep.y14.predicted = (1.0 - 2.0 * c) * c * (c - 1.0) / 8.0 * s0 * s0 +
                        0.5 * (sphi12 - phi_p * s12) + s12 * (sh12 + s13) + s14;
    rep.y14.diff = std::abs(rep.y14.predicted - rep.y14.direct);

    // Residue check on the reduced residue-free combinations.
    E2System s = sys;
    CurveForm combo13 = over_y([s, c, half_cc](cplx l) {
        return triangular_h(c, l) * half_cc + s.g(l) * cubic_value(c, l);
    });
    CurveForm combo24 = over_y([s, c, half_cc](cplx l) {
        return s.d(l) * cubic_value(c, l) - triangular_h(c, l) * half_cc;
    });
    combo13.poles = {cplx(0.0), cplx(1.0), c};
    combo24.poles = {cplx(0.0), cplx(1.0), c};
    rep.max_residue = 0.0;
    for (const CurveForm* f : {&combo13, &combo24})
        for (cplx pole : f->poles)
            rep.max_residue =
                std::max(rep.max_residue, std::abs(residue_on_curve(curve, *f, pole, opts)));
    return rep;
}

double shuffle_residual_sweep(int draws, std::uint64_t seed, const QuadratureOptions& opts,
                              bool parallel) {
    std::vector<double> residual(draws, 0.0);

    auto body = [&](int i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        auto coin = [&]() { return (rng.next() >> 32) * (1.0 / 4294967296.0); };
        // Random rational forms with poles well outside the sample disk.
        auto random_form = [&]() {
            cplx pole = 3.0 * std::exp(cplx(0.0, 2.0 * kPi * coin())) * (1.0 + coin());
            cplx a(2.0 * coin() - 1.0, 2.0 * coin() - 1.0);
            cplx b(2.0 * coin() - 1.0, 2.0 * coin() - 1.0);
            return Form::rational([pole, a, b](cplx z) { return a + b / (z - pole); });
        };
        Form w1 = random_form();
        Form w2 = random_form();
        // Random two-leg polyline inside the unit disk.
        cplx z0(coin() - 0.5, coin() - 0.5);
        cplx z1(coin() - 0.5, coin() - 0.5);
        cplx z2(coin() - 0.5, coin() - 0.5);
        Path p;
        p.append(Segment::line(z0, z1));
        p.append(Segment::line(z1, z2));

        cplx i12 = iterated_integral({w1, w2}, p, nullptr, opts);
        cplx i21 = iterated_integral({w2, w1}, p, nullptr, opts);
        cplx s1 = integrate_form(w1, p, nullptr, opts);
        cplx s2 = integrate_form(w2, p, nullptr, opts);
        residual[i] = std::abs(i12 + i21 - s1 * s2);
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < draws; ++i) body(i);
    } else {
        for (int i = 0; i < draws; ++i) body(i);
    }

    double worst = 0.0;
    for (double r : residual) worst = std::max(worst, r);
    return worst;
}

}  // namespace pvi
