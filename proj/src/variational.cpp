#include "pvilab/variational.hpp"

namespace pvi {

namespace {
PolyValues polys_at(cplx c, cplx lambda, const PviParameters& params) {
    return eval_polys(c, lambda, params);
}
}  // namespace

cplx E1System::a(cplx lambda) const {
    cplx e = cubic_value(c, lambda);
    return cubic_derivative(c, lambda) / (2.0 * e);
}

cplx E1System::b(cplx lambda) const {
    cplx e = cubic_value(c, lambda);
    return 0.5 * c * (c - 1.0) / e;
}

Mat E1System::coeff(cplx lambda) const {
    Mat m(2);
    m.at(0, 1) = b(lambda);
    m.at(1, 1) = a(lambda);
    return m;
}

SystemMatrix E1System::system() const {
    E1System self = *this;
    return SystemMatrix{[self](cplx lambda, cplx) { return self.coeff(lambda); }, 2, false};
}

E1System build_e1(cplx c) {
    EllipticCurve check(c);  // validates c
    return E1System{c};
}

Mat closed_form_X(const E1System& e1, const Path& path_from_p, BranchState branch_at_p,
                  const QuadratureOptions& opts) {
    Form omega = period_form(EllipticCurve(e1.c)).as_form();
    BranchState b = branch_at_p;
    cplx integral = path_from_p.empty() ? cplx(0.0) : integrate_form(omega, path_from_p, &b, opts);
    Mat x(2);
    x.at(0, 0) = integral;
    x.at(0, 1) = 1.0;
    x.at(1, 0) = b.y();
    return x;
}

Mat closed_form_X_at(const E1System&, const BranchState& branch_at_p) {
    Mat x(2);
    x.at(0, 1) = 1.0;
    x.at(1, 0) = branch_at_p.y();
    return x;
}

ClosedFormT closed_form_T(const Periods& periods) {
    ClosedFormT t;
    t.t0 = Mat(2, {-1.0, 0.0, 0.0, 1.0});
    t.t1 = Mat(2, {-1.0, 0.0, periods.pi1, 1.0});
    t.tc = Mat(2, {-1.0, 0.0, periods.pi2, 1.0});
    return t;
}

cplx E2System::a(cplx lambda) const { return E1System{c}.a(lambda); }
cplx E2System::b(cplx lambda) const { return E1System{c}.b(lambda); }

cplx E2System::d(cplx lambda) const {
    PolyValues v = polys_at(c, lambda, params);
    return (2.0 * v.e * v.f_lambda - v.e_lambda * v.f) / (4.0 * v.e * v.e);
}

cplx E2System::e(cplx lambda) const {
    PolyValues v = polys_at(c, lambda, params);
    return (-(2.0 * lambda - 1.0) * v.e + lambda * (lambda - 1.0) * v.e_lambda) /
           (2.0 * v.e * v.e);
}

cplx E2System::f(cplx lambda) const {
    PolyValues v = polys_at(c, lambda, params);
    return -c * (c - 1.0) * v.f / (4.0 * v.e * v.e);
}

cplx E2System::g(cplx lambda) const {
    PolyValues v = polys_at(c, lambda, params);
    return ((2.0 * c - 1.0) * v.e + c * (c - 1.0) * lambda * (lambda - 1.0)) /
           (2.0 * v.e * v.e);
}

Mat E2System::coeff(cplx lambda) const {
    Mat m(4);
    cplx av = a(lambda), bv = b(lambda);
    m.at(0, 1) = bv;
    m.at(0, 2) = g(lambda);
    m.at(0, 3) = f(lambda);
    m.at(1, 1) = av;
    m.at(1, 2) = e(lambda);
    m.at(1, 3) = d(lambda);
    m.at(2, 2) = av;
    m.at(2, 3) = bv;
    m.at(3, 3) = 2.0 * av;
    return m;
}

SystemMatrix E2System::system() const {
    E2System self = *this;
    return SystemMatrix{[self](cplx lambda, cplx) { return self.coeff(lambda); }, 4, false};
}

E2System build_e2(cplx c, const PviParameters& params) {
    EllipticCurve check(c);
    return E2System{c, params};
}

CurveForm TriangularE2::w12() const {
    CurveForm f;
    cplx cc = c;
    f.r = [cc](cplx) { return 0.5 * cc * (cc - 1.0); };
    f.over_y = true;
    f.residue_free = true;
    return f;
}

CurveForm TriangularE2::w13() const {
    CurveForm f;
    E2System sys = base;
    // y g = g E / y
    f.r = [sys](cplx lambda) { return sys.g(lambda) * cubic_value(sys.c, lambda); };
    f.over_y = true;
    f.poles = {cplx(0.0), cplx(1.0), sys.c};
    return f;
}

CurveForm TriangularE2::w14() const {
    CurveForm f;
    E2System sys = base;
    f.r = [sys](cplx lambda) { return sys.f(lambda) * cubic_value(sys.c, lambda); };
    f.over_y = false;
    f.poles = {cplx(0.0), cplx(1.0), sys.c};
    return f;
}

CurveForm TriangularE2::w23() const {
    CurveForm f;
    E2System sys = base;
    f.r = [sys](cplx lambda) { return sys.e(lambda); };
    f.over_y = false;
    f.poles = {sys.c};
    return f;
}

CurveForm TriangularE2::w24() const {
    CurveForm f;
    E2System sys = base;
    f.r = [sys](cplx lambda) { return sys.d(lambda) * cubic_value(sys.c, lambda); };
    f.over_y = true;
    f.poles = {cplx(0.0), cplx(1.0), sys.c};
    return f;
}

CurveForm TriangularE2::w34() const { return w12(); }

Mat TriangularE2::coeff(cplx lambda, cplx y) const {
    Mat m(4);
    cplx bv = base.b(lambda);
    m.at(0, 1) = y * bv;
    m.at(0, 2) = y * base.g(lambda);
    m.at(0, 3) = cubic_value(c, lambda) * base.f(lambda);
    m.at(1, 2) = base.e(lambda);
    m.at(1, 3) = y * base.d(lambda);
    m.at(2, 3) = y * bv;
    return m;
}

SystemMatrix TriangularE2::system() const {
    TriangularE2 self = *this;
    return SystemMatrix{[self](cplx lambda, cplx y) { return self.coeff(lambda, y); }, 4, true};
}

TriangularE2 triangularize(const E2System& sys) { return TriangularE2{sys.c, sys}; }

cplx triangular_h(cplx c, cplx lambda) { return -0.5 / (lambda - c); }

}  // namespace pvi
