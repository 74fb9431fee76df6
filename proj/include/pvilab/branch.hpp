#pragma once

#include "pvilab/geometry.hpp"

namespace pvi {

// Value of the cubic E(c, lambda) = lambda (lambda - 1) (lambda - c).
cplx cubic_value(cplx c, cplx lambda);
cplx cubic_derivative(cplx c, cplx lambda);

// A tracked determination of y = sqrt(lambda (lambda-1)(lambda-c)).
//
// The project-wide convention: at the reference point lambda = -1 the branch
// is the principal square root, and the branch anywhere else is obtained by
// continuation along a straight run from -1 (with detours above/below the
// roots it would otherwise hit).  All branch-sensitive results are reported
// under this single convention.
class BranchState {
  public:
    BranchState(cplx c, cplx lambda, cplx y);

    // Branch at the reference point lambda_ref = -1.
    static BranchState reference(cplx c);
    // Reference branch continued to `lambda` along the canonical run.
    static BranchState at(cplx c, cplx lambda);

    cplx c() const { return c_; }
    cplx lambda() const { return lambda_; }
    cplx y() const { return y_; }

    // Relative defect |y^2 - E| / scale; should sit at roundoff.
    double defect() const;

    // Continue along one segment / a whole path (in place).
    void advance(const Segment& seg);
    void advance(const Path& path);

    // Continue to a nearby point (single step, no path): picks the root
    // closer to the current value, rejecting ambiguous jumps.
    cplx step_to(cplx lambda) const;

  private:
    cplx c_, lambda_, y_;
};

// Returned value is the continuation of `branch` along `path`;
// path must start at the branch's current point.
BranchState continue_sqrt(const BranchState& branch, const Path& path);

}  // namespace pvi
