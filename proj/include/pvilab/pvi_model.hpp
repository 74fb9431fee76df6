#pragma once

#include <string>

#include "pvilab/linalg.hpp"

namespace pvi {

// The four kappa parameters and every constant derived from them.
struct PviParameters {
    cplx kappa0, kappa1, kappat, kappa_inf;
    // Derived on construction.
    cplx epsilon;  // -(k0 + k1 + kt + kinf + 1)
    cplx kappa;    // ((k0+k1+kt+1)^2 - kinf^2) / 2
    cplx alpha, beta, gamma, delta;
    cplx big_g;    // -eps (k0+k1+kt-kinf+1)/2; equals kappa identically
    bool epsilon_zero = false;  // Hirzebruch special case, recorded only
};

PviParameters derive_parameters(cplx k0, cplx k1, cplx kt, cplx kinf);

struct PolyValues {
    cplx e, f, e_lambda, f_lambda;
};

// E(t,l) = l(l-1)(l-t), F(t,l) = k0(l-1)(l-t) + k1 l(l-t) + (kt+1) l(l-1),
// with their lambda-derivatives.
PolyValues eval_polys(cplx t, cplx lambda, const PviParameters& p);

enum class Chart { W1, W2, W3, W4 };
std::string chart_name(Chart chart);

struct ChartPoint {
    Chart chart;
    cplx lambda, mu;
};

// Transition between charts of the Hirzebruch atlas; throws DomainError off
// the overlap (zero denominator).
ChartPoint chart_transition(const ChartPoint& p, Chart target, const PviParameters& params);

// Right-hand side of the foliation in chart W2, as d/dlambda.
struct FoliationRhs {
    cplx dmu_dlambda;
    cplx dt_dlambda;
};

FoliationRhs foliation_rhs(cplx lambda, cplx mu, cplx t, const PviParameters& p);

struct SingularPoint {
    std::string label;  // "a0", "a1", "at", "ainf"
    ChartPoint point;
};

// The four singular points on the leaf at infinity over t; requires t != 0, 1.
std::array<SingularPoint, 4> singular_points(cplx t);

}  // namespace pvi
