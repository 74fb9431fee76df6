#include <doctest.h>

#include "oracles.hpp"
#include "pvilab/iterated.hpp"
#include "pvilab/monodromy.hpp"

using namespace pvi;

namespace {
QuadratureOptions qopts() { return QuadratureOptions{}; }
OdeOptions oopts() { return OdeOptions{}; }
PviParameters params() { return derive_parameters(1.0 / 3.0, 1.0 / 5.0, 1.0 / 7.0, 0.5); }

Path two_legs(cplx a, cplx b, cplx c) {
    Path p;
    p.append(Segment::line(a, b));
    p.append(Segment::line(b, c));
    return p;
}
}  // namespace

TEST_CASE("length-1 words reduce to plain integrals") {
    Form f = Form::rational([](cplx z) { return std::cos(z); });
    Path p = two_legs(0.0, cplx(0.4, 0.2), 1.0);
    CHECK(std::abs(iterated_integral({f}, p, nullptr, qopts()) -
                   integrate_form(f, p, nullptr, qopts())) < 1e-14);
}

TEST_CASE("repeated dz over the unit run gives 1/2") {
    Form one = Form::rational([](cplx) { return cplx(1.0); });
    Path p;
    p.append(Segment::line(0.0, 1.0));
    CHECK(std::abs(iterated_integral({one, one}, p, nullptr, qopts()) - 0.5) < 1e-13);
}

TEST_CASE("shuffle identity for random forms and paths") {
    CHECK(shuffle_residual_sweep(100, 20240901, qopts()) < 1e-10);
}

TEST_CASE("Chen concatenation against the nested Simpson oracle") {
    auto f1 = [](cplx z) { return std::exp(0.3 * z); };
    auto f2 = [](cplx z) { return 1.0 / (z - cplx(0.0, 2.0)); };
    auto f3 = [](cplx z) { return z * z - 0.5; };
    std::vector<Form> forms = {Form::rational(f1), Form::rational(f2), Form::rational(f3)};

    Path first = two_legs(cplx(-0.8, 0.1), cplx(-0.2, -0.3), cplx(0.1, 0.25));
    Path second = two_legs(cplx(0.1, 0.25), cplx(0.6, 0.4), cplx(1.0, -0.1));
    Path whole = concat(first, second);

    std::vector<Word> words = {{0}, {1}, {0, 1}, {1, 2}, {0, 1, 2}};
    std::vector<Word> closure = subword_closure(words);
    WordValues on_first = path_signature(first, forms, closure, nullptr, qopts());
    WordValues on_second = path_signature(second, forms, closure, nullptr, qopts());
    WordValues combined = chen_concatenate(on_first, on_second);

    // Length-1 additivity.
    CHECK(std::abs(combined.at({0}) - (on_first.at({0}) + on_second.at({0}))) < 1e-14);

    // Every requested word against an independent nested quadrature.
    for (const Word& w : words) {
        std::vector<std::function<cplx(cplx)>> word_fns;
        for (int idx : w) word_fns.push_back(idx == 0 ? std::function<cplx(cplx)>(f1)
                                                      : (idx == 1 ? std::function<cplx(cplx)>(f2)
                                                                  : std::function<cplx(cplx)>(f3)));
        cplx expect = oracle::nested_iterated(word_fns, whole, 1e-12);
        CHECK(std::abs(combined.at(w) - expect) < 1e-9);
    }

    // Concatenating with an empty prefix leaves values unchanged.
    WordValues zero;
    for (const Word& w : closure) zero[w] = 0.0;
    WordValues same = chen_concatenate(zero, on_first);
    for (const Word& w : closure) CHECK(std::abs(same.at(w) - on_first.at(w)) < 1e-15);
}

TEST_CASE("Y matrix: empty path, shape, and the ode cross-check") {
    cplx c = 0.5;
    TriangularE2 tri = triangularize(build_e2(c, params()));

    Path empty;
    YMatrixEntries y0 = y_matrix(tri, empty, nullptr, qopts());
    CHECK(deviation_from_identity(y0.matrix()) == 0.0);

    Path p = two_legs(cplx(-0.45, 0.3), cplx(0.3, 0.5), cplx(1.4, 0.35));
    BranchState b = BranchState::at(c, p.start());
    YMatrixEntries y = y_matrix(tri, p, &b, qopts());
    Mat ym = y.matrix();
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(ym.at(i, i) - 1.0) == 0.0);
        for (int j = 0; j < i; ++j) CHECK(std::abs(ym.at(i, j)) == 0.0);
    }
    CHECK(std::abs(y.y34 - y.y12) < 1e-14);

    BranchState b2 = BranchState::at(c, p.start());
    Mat via_ode = ode_continue(tri.system(), p, Mat::identity(4), &b2, oopts());
    CHECK(max_abs_diff(ym, via_ode) < 1e-8);
}

TEST_CASE("iterated monodromy of the triangular system") {
    cplx c = 0.5;
    TriangularE2 tri = triangularize(build_e2(c, params()));
    EllipticCurve curve(c);
    std::vector<cplx> pts = curve.branch_points();
    cplx base(0.3, 0.4);
    Loop g0 = build_puncture_loop(pts, 0, base, 0.1);
    Loop g1 = build_puncture_loop(pts, 1, base, 0.1);

    // A non-closing lift is refused.
    CHECK_THROWS_AS(e2_monodromy_iterated(tri, g0, qopts()), DomainError);

    // Contractible loop: identity.
    Loop even = compose_loops(g0, g1);
    Loop contractible = compose_loops(even, reverse_loop(even));
    CHECK(deviation_from_identity(e2_monodromy_iterated(tri, contractible, qopts())) <
          1e-9);

    // Commutator of the two lifted basis cycles: identity both ways.
    Cycle c01 = make_cycle(curve, CycleId::Cycle01, 0.25, qopts());
    Cycle c0c = make_cycle(curve, CycleId::Cycle0c, 0.25, qopts());
    Loop comm = compose_loops(compose_loops(c01.loop, c0c.loop),
                              compose_loops(reverse_loop(c01.loop), reverse_loop(c0c.loop)));
    Mat iter = e2_monodromy_iterated(tri, comm, qopts());
    CHECK(deviation_from_identity(iter) < 1e-6);

    LinearSystemOnSphere tri_sys{pts, tri.system(), c};
    Mat ode = numeric_monodromy(tri_sys, comm, oopts());
    CHECK(max_abs_diff(iter, ode) < 1e-7);

    // Monodromies of closed lifted loops commute; their products compose.
    Mat ma = e2_monodromy_iterated(tri, c01.loop, qopts());
    Mat mb = e2_monodromy_iterated(tri, c0c.loop, qopts());
    Loop ab = compose_loops(c01.loop, c0c.loop);
    Mat mab = e2_monodromy_iterated(tri, ab, qopts());
    CHECK(max_abs_diff(ma * mb, mb * ma) < 1e-7);
    CHECK(max_abs_diff(mb * ma, mab) < 1e-7);
}

TEST_CASE("exact-form reduction records") {
    cplx c = 0.5;
    TriangularE2 tri = triangularize(build_e2(c, params()));

    // dh matches the w23 coefficient pointwise.
    for (int i = 0; i < 8; ++i) {
        SampleRng rng(9, static_cast<std::uint64_t>(i));
        cplx l((rng.next() >> 32) * (2.0 / 4294967296.0) + 1.5,
               (rng.next() >> 32) * (1.0 / 4294967296.0) + 0.1);
        cplx dh = oracle::central_difference(
            [&](cplx z) { return triangular_h(c, z); }, l, cplx(1e-6, 0.0));
        CHECK(std::abs(tri.w23().as_form().value(l, 0.0) - dh) < 1e-10);
    }

    Path p = two_legs(cplx(-0.5, 0.25), cplx(0.4, 0.55), cplx(1.5, 0.3));
    ExactReductionRecord rec = reduce_exact(tri, tri.w12(), p, qopts());
    CHECK(rec.diff < 1e-10);

    CurveForm zero;
    zero.r = [](cplx) { return cplx(0.0); };
    zero.over_y = false;
    ExactReductionRecord rec0 = reduce_exact(tri, zero, p, qopts());
    CHECK(std::abs(rec0.lhs) < 1e-14);
    CHECK(std::abs(rec0.rhs) < 1e-14);
}

TEST_CASE("elliptic reduction of the closed-loop Y entries") {
    cplx c = 0.5;
    E2System e2 = build_e2(c, params());
    TriangularE2 tri = triangularize(e2);
    EllipticCurve curve(c);

    for (CycleId id : {CycleId::Cycle01, CycleId::Cycle0c}) {
        Cycle cyc = make_cycle(curve, id, 0.25, qopts());
        EllipticReductionReport rep = elliptic_reduction(tri, cyc, qopts());
        CHECK(rep.y13.diff < 1e-6);
        CHECK(rep.y24.diff < 1e-6);
        CHECK(rep.y14.diff < 1e-6);
        CHECK(rep.max_residue < 1e-8);

        // The omega-bar loop integral reduces to the first-kind period: the
        // exact part d(F/y)/2 contributes nothing over a closed lifted loop.
        CurveForm wbar;
        PviParameters ps = params();
        E2System sys = e2;
        wbar.r = [sys, c](cplx l) {
            cplx b = 0.5 * c * (c - 1.0) / cubic_value(c, l);
            return (-2.0 * triangular_h(c, l) * b + sys.d(l) - sys.g(l)) *
                   cubic_value(c, l);
        };
        wbar.over_y = true;
        BranchState b1 = cyc.base_branch;
        cplx loop_wbar = integrate_form(wbar.as_form(), cyc.loop.path, &b1, qopts());
        CurveForm w0;
        w0.r = [](cplx) { return cplx(1.0); };
        w0.over_y = true;
        BranchState b2 = cyc.base_branch;
        cplx loop_w0 = integrate_form(w0.as_form(), cyc.loop.path, &b2, qopts());
        CHECK(std::abs(loop_wbar - 0.5 * (1.0 - 2.0 * c) * loop_w0) < 1e-8);
        (void)ps;
    }
}
