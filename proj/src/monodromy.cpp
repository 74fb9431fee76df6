#include "pvilab/monodromy.hpp"

#include <cmath>

namespace pvi {

Mat numeric_monodromy(const LinearSystemOnSphere& sys, const Loop& loop,
                      const OdeOptions& opts) {
    if (!loop.path.is_closed()) throw DomainError("numeric_monodromy: loop is not closed");
    Mat id = Mat::identity(sys.matrix.order);
    if (sys.matrix.needs_branch) {
        BranchState b = BranchState::at(sys.curve_c, loop.basepoint);
        return ode_continue(sys.matrix, loop.path, id, &b, opts);
    }
    return ode_continue(sys.matrix, loop.path, id, nullptr, opts);
}

Mat to_solution_frame(const Mat& m, const Mat& x_at_basepoint) {
    if (std::abs(det(x_at_basepoint)) < 1e-300)
        throw NumericError("to_solution_frame: singular X(p)");
    return inverse(x_at_basepoint) * m * x_at_basepoint;
}

MonodromyRep monodromy_representation(const LinearSystemOnSphere& sys, cplx basepoint,
                                      double radius, const OdeOptions& opts) {
    MonodromyRep rep;
    rep.basepoint = basepoint;
    rep.loop0 = build_puncture_loop(sys.punctures, 0, basepoint, radius);
    rep.loop1 = build_puncture_loop(sys.punctures, 1, basepoint, radius);
    rep.loopc = build_puncture_loop(sys.punctures, 2, basepoint, radius);
    rep.m0 = numeric_monodromy(sys, rep.loop0, opts);
    rep.m1 = numeric_monodromy(sys, rep.loop1, opts);
    rep.mc = numeric_monodromy(sys, rep.loopc, opts);
    return rep;
}

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index)
    : state(seed + 0x9e3779b97f4a7c15ULL * (index + 1)) {}

std::uint64_t SampleRng::next() {
    // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int SampleRng::below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

std::vector<int> random_even_word(SampleRng& rng, int length_bound) {
    int half = std::max(1, length_bound / 2);
    int len = 2 * (1 + rng.below(half));
    std::vector<int> w(len);
    for (int& u : w) u = rng.below(3);
    return w;
}

std::string word_to_string(const std::vector<int>& word) {
    std::string s;
    for (int u : word) s.push_back(u == 0 ? '0' : (u == 1 ? '1' : 'c'));
    return s;
}

Mat word_matrix(const MonodromyRep& rep, const std::vector<int>& word) {
    Mat m = Mat::identity(rep.m0.n);
    for (int u : word) m = m * rep.generator(u);
    return m;
}

GroupCheckReport check_virtual_commutativity(const MonodromyRep& rep, int length_bound,
                                             int samples, std::uint64_t seed, double tol,
                                             bool parallel) {
    std::vector<double> deviation(samples, 0.0);
    std::vector<std::string> witness(samples);

    auto body = [&](int i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        std::vector<int> u = random_even_word(rng, length_bound);
        std::vector<int> v = random_even_word(rng, length_bound);
        Mat wu = word_matrix(rep, u);
        Mat wv = word_matrix(rep, v);
        Mat comm = wu * wv * inverse(wu) * inverse(wv);
        deviation[i] = deviation_from_identity(comm);
        if (deviation[i] >= tol)
            witness[i] = word_to_string(u) + " , " + word_to_string(v);
    };

    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < samples; ++i) body(i);
    } else {
        for (int i = 0; i < samples; ++i) body(i);
    }

    GroupCheckReport report;
    report.word_length_bound = length_bound;
    report.sample_count = samples;
    report.seed = seed;
    report.tolerance = tol;
    for (int i = 0; i < samples; ++i) {
        if (deviation[i] > report.max_deviation) report.max_deviation = deviation[i];
        if (report.witness.empty() && !witness[i].empty()) report.witness = witness[i];
    }
    report.pass = report.max_deviation < tol;
    return report;
}

}  // namespace pvi
