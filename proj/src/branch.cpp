#include "pvilab/branch.hpp"

#include <cmath>

namespace pvi {

cplx cubic_value(cplx c, cplx lambda) { return lambda * (lambda - 1.0) * (lambda - c); }

cplx cubic_derivative(cplx c, cplx lambda) {
    return (lambda - 1.0) * (lambda - c) + lambda * (lambda - c) + lambda * (lambda - 1.0);
}

BranchState::BranchState(cplx c, cplx lambda, cplx y) : c_(c), lambda_(lambda), y_(y) {
    if (defect() > 1e-8) throw DomainError("BranchState: y^2 != E(c, lambda)");
}

double BranchState::defect() const {
    cplx e = cubic_value(c_, lambda_);
    double scale = std::max(1.0, std::abs(e));
    return std::abs(y_ * y_ - e) / scale;
}

BranchState BranchState::reference(cplx c) {
    cplx lambda = -1.0;
    return BranchState(c, lambda, std::sqrt(cubic_value(c, lambda)));
}

BranchState BranchState::at(cplx c, cplx lambda) {
    BranchState b = reference(c);
    if (lambda == cplx(-1.0)) return b;
    std::vector<cplx> roots = {cplx(0.0), cplx(1.0), c};
    double clearance = 1e-3 * min_pairwise_distance(roots);
    clearance = std::min(clearance, 0.45 * std::abs(lambda + 1.0));
    for (cplx r : roots) {
        clearance = std::min(clearance, 0.45 * std::abs(lambda - r));
        clearance = std::min(clearance, 0.45 * std::abs(cplx(-1.0) - r));
    }
    if (clearance <= 0.0) throw DomainError("branch: target sits on a root of the cubic");
    std::vector<cplx> avoid;
    for (cplx r : roots)
        if (std::abs(r - lambda) > clearance && std::abs(r + 1.0) > clearance) avoid.push_back(r);
    b.advance(segment_with_detours(-1.0, lambda, avoid, clearance));
    return b;
}

cplx BranchState::step_to(cplx lambda) const {
    cplx root = std::sqrt(cubic_value(c_, lambda));
    cplx cand = (std::abs(root - y_) <= std::abs(-root - y_)) ? root : -root;
    // Ambiguity guard: the two determinations must be well separated
    // relative to how far the tracked value moved.
    double gap = std::abs(2.0 * root);
    double moved = std::abs(cand - y_);
    if (gap < 10.0 * moved)
        throw NumericError("branch continuation: step too large near a root");
    return cand;
}

namespace {

// March y from parameter s0 to s1, bisecting locally wherever the
// nearest-root choice becomes ambiguous.
cplx walk_branch(cplx c, const Segment& seg, double s0, cplx y0, double s1, int depth) {
    cplx z = seg.point(s1);
    cplx root = std::sqrt(cubic_value(c, z));
    cplx cand = (std::abs(root - y0) <= std::abs(-root - y0)) ? root : -root;
    if (std::abs(2.0 * root) >= 10.0 * std::abs(cand - y0)) return cand;
    if (depth >= 48) throw NumericError("branch continuation: step-size collapse near a root");
    double sm = 0.5 * (s0 + s1);
    cplx ym = walk_branch(c, seg, s0, y0, sm, depth + 1);
    return walk_branch(c, seg, sm, ym, s1, depth + 1);
}

}  // namespace

void BranchState::advance(const Segment& seg) {
    if (std::abs(seg.start() - lambda_) > 1e-9 * std::max(1.0, seg.length()))
        throw DomainError("branch continuation: segment does not start at the current point");
    const int coarse = 32;
    cplx y = y_;
    for (int k = 1; k <= coarse; ++k) {
        double s0 = static_cast<double>(k - 1) / coarse;
        double s1 = static_cast<double>(k) / coarse;
        y = walk_branch(c_, seg, s0, y, s1, 0);
    }
    lambda_ = seg.end();
    y_ = y;
}

void BranchState::advance(const Path& path) {
    for (const auto& seg : path.segments()) advance(seg);
}

BranchState continue_sqrt(const BranchState& branch, const Path& path) {
    BranchState b = branch;
    b.advance(path);
    return b;
}

}  // namespace pvi
