#pragma once

#include <optional>

#include "pvilab/iterated.hpp"
#include "pvilab/monodromy.hpp"

namespace pvi {

// Order-2 jet of a holonomy germ on the transversal (dt, mu) at (0,0):
//   image_i = L[i][.] (dt, mu) + q[i][0] mu dt + q[i][1] mu^2.
// No constant term (the leaf is invariant) and no dt^2 monomial (both dmu
// and dt responses are proportional to mu).
struct Jet2 {
    Mat linear{2};
    cplx q[2][2] = {{0.0, 0.0}, {0.0, 0.0}};

    static Jet2 identity();
    std::pair<cplx, cplx> apply(cplx dt, cplx mu) const;
};

// outer . inner, truncated at total degree 2.  The induced dt^2 coefficient
// (proportional to the inner map's lower-left linear entry, which vanishes
// for holonomy jets) is dropped; its magnitude is reported if asked.
Jet2 jet_compose(const Jet2& outer, const Jet2& inner, double* dropped_dt2 = nullptr);

double jet_distance(const Jet2& x, const Jet2& y);
double jet_deviation_from_identity(const Jet2& j);

// Cross-section at a regular point lambda* of the leaf at infinity.
struct TransversalFrame {
    cplx c;
    cplx lambda_star;
};

// lambda* on the circle |l| = min(1,|c|)/4, off the segment hull of the
// punctures (above the axis for real c, mirrored otherwise).
TransversalFrame make_frame(cplx c);

struct HolonomyContext {
    cplx c;
    PviParameters params;
    TransversalFrame frame;
    double radius;          // keyhole radius for the generator loops
    Loop loops[3];          // gamma_0, gamma_1, gamma_c at lambda*
};

HolonomyContext make_holonomy_context(cplx c, const PviParameters& params,
                                      double radius_factor = 0.25,
                                      std::optional<cplx> basepoint = std::nullopt);

// Jet of the holonomy along the loop: linear part from E1, quadratic part
// from the upper-right block of the E2 monodromy applied to (mu dt, mu^2).
Jet2 holonomy_jet(const HolonomyContext& ctx, const Loop& loop, const OdeOptions& opts);

// Leafwise transport of the transversal point around the loop.
std::pair<cplx, cplx> holonomy_nonlinear(const HolonomyContext& ctx, const Loop& loop,
                                         cplx dt, cplx mu, const OdeOptions& opts);

struct InvolutivityRow {
    std::string generator;            // "h0", "h1", "hc"
    double jet_square_deviation;      // || jet o jet - id ||
    double nonlinear_return_distance; // double application from the offset
};

struct InvolutivityReport {
    std::array<InvolutivityRow, 3> rows;
    double hinf_return_distance;      // (h0 h1 hc)^2 from the offset
    double max_jet_deviation;
    double max_nonlinear_distance;
};

InvolutivityReport check_involutivity(const HolonomyContext& ctx, cplx dt_offset,
                                      cplx mu_offset, const OdeOptions& opts);

struct RamificationFit {
    double exponent;          // slope of log|lambda + k0 mu| vs log|mu|
    double half_window_drift; // |slope - slope on the inner half window|
    double control_exponent;  // same fit with the wrong projection axis
    int samples;
};

// Least-squares exponent of the leafwise approach to the singular point a0.
RamificationFit ramification_exponent(cplx c, const PviParameters& params, double mu_start,
                                      double mu_end, int samples, const OdeOptions& opts);

struct JetCommutativityReport {
    int word_length_bound = 0;
    int sample_count = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double max_even_deviation = 0.0;
    double max_odd_deviation = 0.0;  // parity control; should exceed tolerance
    bool even_pass = false;
    bool odd_control_pass = false;
    std::string witness;
};

JetCommutativityReport check_virtual_commutativity_jets(const HolonomyContext& ctx,
                                                        int length_bound, int samples,
                                                        std::uint64_t seed, double tol,
                                                        const OdeOptions& opts,
                                                        bool parallel = true);

// Jet of a word of generator loops (paths act left to right, maps compose
// right to left).
Jet2 word_jet(const std::array<Jet2, 3>& gens, const std::vector<int>& word);

}  // namespace pvi
