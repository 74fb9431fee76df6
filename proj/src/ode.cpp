#include "pvilab/ode.hpp"

#include <algorithm>
#include <cmath>

namespace pvi {

namespace {

// Classic RK4 with step doubling: compare one h-step against two h/2-steps,
// accept with local extrapolation, adapt h.  Ops supplies the vector-space
// arithmetic and is told about every accepted step (branch anchoring).
template <class State, class Ops>
State integrate_segment(const State& initial, Ops& ops, const OdeOptions& opts) {
    State u = initial;
    double s = 0.0;
    double h = std::min(opts.h_init, 1.0);
    int steps = 0;

    auto rk4 = [&](const State& u0, double s0, double hh) {
        State k1 = ops.rhs(s0, u0);
        State k2 = ops.rhs(s0 + 0.5 * hh, ops.add_scaled(u0, 0.5 * hh, k1));
        State k3 = ops.rhs(s0 + 0.5 * hh, ops.add_scaled(u0, 0.5 * hh, k2));
        State k4 = ops.rhs(s0 + hh, ops.add_scaled(u0, hh, k3));
        State out = u0;
        out = ops.add_scaled(out, hh / 6.0, k1);
        out = ops.add_scaled(out, hh / 3.0, k2);
        out = ops.add_scaled(out, hh / 3.0, k3);
        out = ops.add_scaled(out, hh / 6.0, k4);
        return out;
    };

    while (s < 1.0 - 1e-15) {
        h = std::min(h, 1.0 - s);
        bool ambiguous = false;
        double err = 0.0;
        double scale = std::max(1.0, ops.norm(u));
        State next = u;
        try {
            State full = rk4(u, s, h);
            State half = rk4(u, s, 0.5 * h);
            State two = rk4(half, s + 0.5 * h, 0.5 * h);
            err = ops.dist(full, two) / 15.0;
            next = ops.extrapolate(two, full);  // two + (two - full)/15
            if (err <= opts.tol * scale) ops.prepare_accept(s + h);
        } catch (const NumericError&) {
            // A stage left the tracked branch's trust region; retry smaller.
            ambiguous = true;
        }
        if (!std::isfinite(err) || !std::isfinite(ops.norm(next))) ambiguous = true;
        if (!ambiguous && err <= opts.tol * scale) {
            u = next;
            s += h;
            ops.commit_accept();
            double grow = err > 0.0 ? 0.9 * std::pow(opts.tol * scale / err, 0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
        } else if (ambiguous) {
            h *= 0.25;
        } else {
            h *= std::clamp(0.9 * std::pow(opts.tol * scale / err, 0.25), 0.1, 0.9);
        }
        if (h < opts.h_min) throw NumericError("ode: step-size collapse");
        if (++steps > opts.max_steps) throw NumericError("ode: step budget exceeded");
    }
    return u;
}

struct MatOps {
    const Segment* seg;
    const SystemMatrix* sys;
    cplx c;
    cplx y_anchor;   // branch value at the last accepted point
    cplx y_pending;  // staged anchor for the step under consideration

    cplx branch_at(cplx lam) const {
        cplx root = std::sqrt(cubic_value(c, lam));
        cplx y = (std::abs(root - y_anchor) <= std::abs(-root - y_anchor)) ? root : -root;
        double gap = std::abs(2.0 * root);
        if (gap < 10.0 * std::abs(y - y_anchor))
            throw NumericError("ode: branch ambiguity inside a step");
        return y;
    }

    Mat rhs(double s, const Mat& m) const {
        cplx lam = seg->point(s);
        cplx y = sys->needs_branch ? branch_at(lam) : cplx(0.0);
        Mat a = sys->coeff(lam, y);
        return seg->velocity(s) * (a * m);
    }
    void prepare_accept(double s) {
        if (sys->needs_branch) y_pending = branch_at(seg->point(s));
    }
    void commit_accept() {
        if (sys->needs_branch) y_anchor = y_pending;
    }
    Mat add_scaled(const Mat& u, double f, const Mat& k) const { return u + cplx(f) * k; }
    double dist(const Mat& a, const Mat& b) const { return max_abs_diff(a, b); }
    double norm(const Mat& m) const { return max_abs(m); }
    Mat extrapolate(const Mat& fine, const Mat& coarse) const {
        return fine + cplx(1.0 / 15.0) * (fine - coarse);
    }
};

struct VecOps {
    const Segment* seg;
    const VecRhs* f;
    int dim;

    VecState rhs(double s, const VecState& u) const {
        cplx lam = seg->point(s);
        VecState du{};
        (*f)(lam, u, du);
        cplx v = seg->velocity(s);
        for (int i = 0; i < dim; ++i) du[i] *= v;
        return du;
    }
    void prepare_accept(double) {}
    void commit_accept() {}
    VecState add_scaled(const VecState& u, double fac, const VecState& k) const {
        VecState out = u;
        for (int i = 0; i < dim; ++i) out[i] += fac * k[i];
        return out;
    }
    double dist(const VecState& a, const VecState& b) const {
        double d = 0.0;
        for (int i = 0; i < dim; ++i) d = std::max(d, std::abs(a[i] - b[i]));
        return d;
    }
    double norm(const VecState& u) const {
        double d = 0.0;
        for (int i = 0; i < dim; ++i) d = std::max(d, std::abs(u[i]));
        return d;
    }
    VecState extrapolate(const VecState& fine, const VecState& coarse) const {
        VecState out = fine;
        for (int i = 0; i < dim; ++i) out[i] += (fine[i] - coarse[i]) / 15.0;
        return out;
    }
};

}  // namespace

Mat ode_continue(const SystemMatrix& system, const Path& path, const Mat& initial,
                 BranchState* branch, const OdeOptions& opts) {
    if (system.needs_branch && branch == nullptr)
        throw DomainError("ode_continue: system needs a branch state");
    if (initial.n != system.order) throw DomainError("ode_continue: order mismatch");

    Mat m = initial;
    cplx c = branch ? branch->c() : cplx(0.0);
    cplx y = branch ? branch->y() : cplx(0.0);
    for (const Segment& seg : path.segments()) {
        MatOps ops{&seg, &system, c, y, y};
        m = integrate_segment(m, ops, opts);
        y = ops.y_anchor;
    }
    if (branch != nullptr && system.needs_branch && !path.empty())
        *branch = BranchState(c, path.end(), y);
    return m;
}

VecState ode_continue_state(const VecRhs& rhs, int dim, const Path& path,
                            const VecState& initial, const OdeOptions& opts) {
    VecState u = initial;
    for (const Segment& seg : path.segments()) {
        VecOps ops{&seg, &rhs, dim};
        u = integrate_segment(u, ops, opts);
    }
    return u;
}

}  // namespace pvi
