#pragma once

#include "pvilab/variational.hpp"

namespace pvi {

// Fundamental solution of the strictly triangular system as a nilpotent
// Picard series: Y = I + int J + int J^2 + int J^3.
struct YMatrixEntries {
    cplx y12, y13, y14, y23, y24, y34;
    Mat matrix() const;  // 4x4 upper-unitriangular
};

// Y over a path from the branch's current point; branch advances to the end.
YMatrixEntries y_matrix(const TriangularE2& tri, const Path& path, BranchState* branch,
                        const QuadratureOptions& opts);

// Monodromy of the triangular system along a loop that lifts closed on S_c,
// evaluated purely by iterated integrals (the ode_continue-free route).
Mat e2_monodromy_iterated(const TriangularE2& tri, const Loop& loop,
                          const QuadratureOptions& opts);

// Verification record for the exact-form reduction
//   int w23 . w  =  h(end) int w - int (h w).
struct ExactReductionRecord {
    cplx lhs, rhs;
    double diff;
};

ExactReductionRecord reduce_exact(const TriangularE2& tri, const CurveForm& omega,
                                  const Path& path, const QuadratureOptions& opts);

// Closed-loop predictions of the Y entries as polynomials in ordinary
// periods (first and second kind), paired with the direct iterated values.
struct ReductionEntry {
    cplx predicted, direct;
    double diff;
};

struct EllipticReductionReport {
    ReductionEntry y13, y24, y14;
    double max_residue;  // over the reduced residue-free combinations
};

EllipticReductionReport elliptic_reduction(const TriangularE2& tri, const Cycle& cycle,
                                           const QuadratureOptions& opts);

// Max shuffle-identity residual over seeded random (form pair, path) draws:
//   | int w1 w2 + int w2 w1 - int w1 int w2 |.
double shuffle_residual_sweep(int draws, std::uint64_t seed, const QuadratureOptions& opts,
                              bool parallel = true);

}  // namespace pvi
