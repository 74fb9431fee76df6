#include "pvilab/pvi_model.hpp"

#include <cmath>

namespace pvi {

PviParameters derive_parameters(cplx k0, cplx k1, cplx kt, cplx kinf) {
    PviParameters p;
    p.kappa0 = k0;
    p.kappa1 = k1;
    p.kappat = kt;
    p.kappa_inf = kinf;
    p.epsilon = -(k0 + k1 + kt + kinf + 1.0);
    cplx s = k0 + k1 + kt + 1.0;
    p.kappa = 0.5 * (s * s - kinf * kinf);
    p.alpha = 0.5 * kinf * kinf;
    p.beta = 0.5 * k0 * k0;
    p.gamma = 0.5 * k1 * k1;
    p.delta = 0.5 * kt * kt;
    p.big_g = -0.5 * p.epsilon * (k0 + k1 + kt - kinf + 1.0);
    p.epsilon_zero = std::abs(p.epsilon) < 1e-14;
    return p;
}

PolyValues eval_polys(cplx t, cplx lambda, const PviParameters& p) {
    PolyValues v;
    v.e = lambda * (lambda - 1.0) * (lambda - t);
    v.f = p.kappa0 * (lambda - 1.0) * (lambda - t) + p.kappa1 * lambda * (lambda - t) +
          (p.kappat + 1.0) * lambda * (lambda - 1.0);
    v.e_lambda = (lambda - 1.0) * (lambda - t) + lambda * (lambda - t) + lambda * (lambda - 1.0);
    v.f_lambda = p.kappa0 * ((lambda - t) + (lambda - 1.0)) + p.kappa1 * ((lambda - t) + lambda) +
                 (p.kappat + 1.0) * ((lambda - 1.0) + lambda);
    return v;
}

std::string chart_name(Chart chart) {
    switch (chart) {
        case Chart::W1: return "W1";
        case Chart::W2: return "W2";
        case Chart::W3: return "W3";
        case Chart::W4: return "W4";
    }
    return "?";
}

namespace {

constexpr double kDenTiny = 1e-300;

cplx safe_inv(cplx z, const char* what) {
    if (std::abs(z) < kDenTiny) throw DomainError(std::string("chart_transition: ") + what);
    return 1.0 / z;
}

// Single-step transitions along the atlas chain W2 - W1 - W3 - W4.
ChartPoint step(const ChartPoint& p, Chart target, const PviParameters& params) {
    cplx eps = params.epsilon;
    if (p.chart == Chart::W1 && target == Chart::W2)
        return {Chart::W2, p.lambda, safe_inv(p.mu, "mu1 = 0 is off the W1/W2 overlap")};
    if (p.chart == Chart::W2 && target == Chart::W1)
        return {Chart::W1, p.lambda, safe_inv(p.mu, "mu2 = 0 is off the W1/W2 overlap")};
    if (p.chart == Chart::W1 && target == Chart::W3)
        return {Chart::W3, safe_inv(p.lambda, "lambda1 = 0 is off the W1/W3 overlap"),
                eps * p.lambda - p.lambda * p.lambda * p.mu};
    if (p.chart == Chart::W3 && target == Chart::W1)
        return {Chart::W1, safe_inv(p.lambda, "lambda3 = 0 is off the W1/W3 overlap"),
                eps * p.lambda - p.lambda * p.lambda * p.mu};
    if (p.chart == Chart::W3 && target == Chart::W4)
        return {Chart::W4, p.lambda, safe_inv(p.mu, "mu3 = 0 is off the W3/W4 overlap")};
    if (p.chart == Chart::W4 && target == Chart::W3)
        return {Chart::W3, p.lambda, safe_inv(p.mu, "mu4 = 0 is off the W3/W4 overlap")};
    throw DomainError("chart_transition: no single-step overlap between charts");
}

int chain_index(Chart c) {
    switch (c) {
        case Chart::W2: return 0;
        case Chart::W1: return 1;
        case Chart::W3: return 2;
        case Chart::W4: return 3;
    }
    return -1;
}

Chart chain_chart(int i) {
    constexpr Chart chain[4] = {Chart::W2, Chart::W1, Chart::W3, Chart::W4};
    return chain[i];
}

}  // namespace

ChartPoint chart_transition(const ChartPoint& p, Chart target, const PviParameters& params) {
    ChartPoint cur = p;
    int from = chain_index(cur.chart), to = chain_index(target);
    while (from != to) {
        int next = from < to ? from + 1 : from - 1;
        cur = step(cur, chain_chart(next), params);
        from = next;
    }
    return cur;
}

FoliationRhs foliation_rhs(cplx lambda, cplx mu, cplx t, const PviParameters& p) {
    PolyValues v = eval_polys(t, lambda, p);
    cplx den = 2.0 * v.e + v.f * mu;
    double scale = std::max({std::abs(v.e), std::abs(v.f * mu), 1e-30});
    if (std::abs(den) < 1e-13 * scale)
        throw DomainError("foliation_rhs: 2E + F mu = 0 (tangency locus)");
    cplx num_mu = (v.e_lambda + v.f_lambda * mu + p.big_g * mu * mu) * mu;
    return {num_mu / den, t * (t - 1.0) * mu / den};
}

std::array<SingularPoint, 4> singular_points(cplx t) {
    if (std::abs(t) < 1e-12 || std::abs(t - 1.0) < 1e-12)
        throw DomainError("singular_points: t must avoid {0, 1}");
    return {SingularPoint{"a0", {Chart::W2, 0.0, 0.0}},
            SingularPoint{"a1", {Chart::W2, 1.0, 0.0}},
            SingularPoint{"at", {Chart::W2, t, 0.0}},
            SingularPoint{"ainf", {Chart::W4, 0.0, 0.0}}};
}

}  // namespace pvi
