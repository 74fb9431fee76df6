#pragma once

#include "pvilab/holonomy.hpp"
#include "pvilab/orbifold.hpp"
#include "pvilab/report.hpp"

namespace pvi {

struct SuiteOutcome {
    json report;
    bool pass = false;
};

// Arithmetic-geometric mean of positive reals (bounded iteration).
double agm_real(double a, double g);

// Closed-form values of the fundamental periods for real c in (0,1), under
// the project conventions:
//   Pi1 = c(1-c) (B - iA),  Pi2 = c(1-c) B,
//   A = pi / agm(1, sqrt(c)),  B = pi / agm(1, sqrt(1-c)).
Periods agm_period_oracle(double c);
bool agm_oracle_applicable(cplx c);

// Numeric E1 monodromy expressed in the frame of the distinguished
// fundamental solution and
// extrapolated to the p -> 0 limit along the segment (0, c).
struct E1ClosedFormComparison {
    Periods periods;
    Mat t0_hat{2}, t1_hat{2}, tc_hat{2};
    double max_deviation = 0.0;  // against closed_form_T(periods)
};

E1ClosedFormComparison compare_e1_closed_form(cplx c, const QuadratureOptions& qopts,
                                              const OdeOptions& oopts);

SuiteOutcome run_periods(const RunConfig& config);
SuiteOutcome run_e1(const RunConfig& config);
SuiteOutcome run_e2(const RunConfig& config);
SuiteOutcome run_holonomy(const RunConfig& config);
SuiteOutcome run_group(const RunConfig& config);
SuiteOutcome run_verify_all(const RunConfig& config);

}  // namespace pvi
