#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pvilab/ode.hpp"
#include "pvilab/quadrature.hpp"

namespace pvi {

// A linear system on the punctured lambda-plane (possibly lifted to S_c).
struct LinearSystemOnSphere {
    std::vector<cplx> punctures;
    SystemMatrix matrix;
    cplx curve_c = 0.0;  // cubic parameter when matrix.needs_branch
};

// Identity-normalized monodromy at the loop basepoint.
Mat numeric_monodromy(const LinearSystemOnSphere& sys, const Loop& loop,
                      const OdeOptions& opts);

// Express an identity-normalized monodromy in the frame of a fundamental
// solution X (continuation acts by right multiplication, X -> X T):
// T = X(p)^{-1} M X(p).
Mat to_solution_frame(const Mat& m, const Mat& x_at_basepoint);

enum class Normalization { IdentityAtBasepoint, SolutionFrame };

struct MonodromyRep {
    cplx basepoint;
    Loop loop0, loop1, loopc;
    Mat m0, m1, mc;
    Normalization normalization = Normalization::IdentityAtBasepoint;

    const Mat& generator(int k) const { return k == 0 ? m0 : (k == 1 ? m1 : mc); }
    const Loop& loop(int k) const { return k == 0 ? loop0 : (k == 1 ? loop1 : loopc); }
};

// Generator monodromies around the three finite punctures, shared basepoint.
MonodromyRep monodromy_representation(const LinearSystemOnSphere& sys, cplx basepoint,
                                      double radius, const OdeOptions& opts);

struct GroupCheckReport {
    int word_length_bound = 0;
    int sample_count = 0;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double max_deviation = 0.0;
    bool pass = false;
    std::string witness;  // offending word pair, empty when passing
};

// Commutators of seeded random even words in the three generators.
// `parallel` switches the OpenMP kernel; results are schedule-independent.
GroupCheckReport check_virtual_commutativity(const MonodromyRep& rep, int length_bound,
                                             int samples, std::uint64_t seed, double tol,
                                             bool parallel = true);

// Deterministic per-index generator (splitmix64 stream).
struct SampleRng {
    std::uint64_t state;
    explicit SampleRng(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next();
    int below(int n);  // uniform in [0, n)
};

// Even word of length 2..length_bound in letters {0,1,c}.
std::vector<int> random_even_word(SampleRng& rng, int length_bound);
std::string word_to_string(const std::vector<int>& word);

Mat word_matrix(const MonodromyRep& rep, const std::vector<int>& word);

}  // namespace pvi
