#pragma once

#include <functional>

#include "pvilab/branch.hpp"
#include "pvilab/linalg.hpp"

namespace pvi {

struct OdeOptions {
    double tol = 1e-12;      // local error target per step
    double h_init = 0.05;    // initial step in segment parameter
    double h_min = 1e-12;
    int max_steps = 2000000;
};

// Coefficient matrix of a linear system, evaluated at (lambda, y).
// Systems with needs_branch = false ignore y.
struct SystemMatrix {
    std::function<Mat(cplx lambda, cplx y)> coeff;
    int order = 2;
    bool needs_branch = false;
};

// Continue the fundamental solution with initial value `initial` along `path`:
// dX/dlambda = A(lambda, y) X.  If the system needs a branch, `branch` must
// sit at the path start and is advanced to the path end.
Mat ode_continue(const SystemMatrix& system, const Path& path, const Mat& initial,
                 BranchState* branch, const OdeOptions& opts);

// Generic first-order complex ODE along a path: du/dlambda = f(lambda, u).
// The state is a small complex vector.
using VecState = std::array<cplx, 4>;
using VecRhs = std::function<void(cplx lambda, const VecState& u, VecState& du)>;

VecState ode_continue_state(const VecRhs& rhs, int dim, const Path& path,
                            const VecState& initial, const OdeOptions& opts);

}  // namespace pvi
