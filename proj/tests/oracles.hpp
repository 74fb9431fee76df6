// Test-side oracles, independent of the library's quadrature/continuation
// machinery: adaptive Simpson (plain and nested), dense argument-sum winding,
// central differences, and the affine reflection model of the orbifold group.
#pragma once

#include <cmath>
#include <functional>

#include "pvilab/geometry.hpp"

namespace oracle {

using pvi::cplx;

// Complex-valued adaptive Simpson on [a, b].
inline cplx simpson(const std::function<cplx(double)>& f, double a, double b, double fa_w,
                    double tol, int depth, cplx fa, cplx fm, cplx fb) {
    (void)fa_w;
    double m = 0.5 * (a + b);
    cplx flm = f(0.5 * (a + m));
    cplx frm = f(0.5 * (m + b));
    cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, 0, tol / 2, depth - 1, fa, flm, fm) +
           simpson(f, m, b, 0, tol / 2, depth - 1, fm, frm, fb);
}

inline cplx integrate(const std::function<cplx(double)>& f, double a, double b,
                      double tol = 1e-12) {
    cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return simpson(f, a, b, 0, tol, 36, fa, fm, fb);
}

// Pullback of a rational 1-form g(z) dz to a path parameter in [0, 1].
struct PathPullback {
    const pvi::Path* path;

    cplx point(double t) const {
        const auto& segs = path->segments();
        double scaled = t * static_cast<double>(segs.size());
        int idx = std::min(static_cast<int>(scaled), static_cast<int>(segs.size()) - 1);
        return segs[idx].point(scaled - idx);
    }
    cplx velocity(double t) const {
        const auto& segs = path->segments();
        double scaled = t * static_cast<double>(segs.size());
        int idx = std::min(static_cast<int>(scaled), static_cast<int>(segs.size()) - 1);
        return segs[idx].velocity(scaled - idx) * static_cast<double>(segs.size());
    }
};

// Nested iterated integral (outermost first) of rational forms by repeated
// adaptive Simpson; O(n^len) evaluations, fine for oracle use.
inline cplx nested_iterated(const std::vector<std::function<cplx(cplx)>>& word,
                            const pvi::Path& path, double tol = 1e-12) {
    PathPullback pb{&path};
    std::function<cplx(size_t, double)> inner = [&](size_t k, double upto) -> cplx {
        std::function<cplx(double)> f = [&](double t) -> cplx {
            cplx val = word[k](pb.point(t)) * pb.velocity(t);
            if (k + 1 < word.size()) val *= inner(k + 1, t);
            return val;
        };
        return integrate(f, 0.0, upto, tol);
    };
    return inner(0, 1.0);
}

// Winding number by dense argument summation (no adaptivity: fixed fine grid).
inline int dense_winding(const pvi::Path& path, cplx q, int per_segment = 4096) {
    double total = 0.0;
    for (const auto& seg : path.segments()) {
        cplx prev = seg.point(0.0) - q;
        for (int k = 1; k <= per_segment; ++k) {
            cplx cur = seg.point(static_cast<double>(k) / per_segment) - q;
            total += std::arg(cur / prev);
            prev = cur;
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * pvi::kPi)));
}

// Central difference with a complex step direction.
inline cplx central_difference(const std::function<cplx(cplx)>& f, cplx z, cplx h) {
    return (f(z + h) - f(z - h)) / (2.0 * h);
}

// The (2,2,2,2) orbifold letters as affine isometries of the plane with
// p = 1, q = i: a(z) = -z, b(z) = 2p - z, c(z) = 2q - z.  Words act with the
// leftmost letter outermost.  Translations are read in lattice units (2p, 2q).
struct AffineMap {
    cplx scale{1.0}, shift{0.0};
    cplx operator()(cplx z) const { return scale * z + shift; }
};

inline AffineMap affine_letter(char ch) {
    switch (ch) {
        case 'a': return {-1.0, 0.0};
        case 'b': return {-1.0, 2.0};
        case 'c': return {-1.0, cplx(0.0, 2.0)};
        default: return {1.0, 0.0};
    }
}

struct AffineNormalForm {
    long long m, n;
    int sign;
};

inline AffineNormalForm affine_reduce(const std::string& word) {
    // The leftmost letter is outermost: word "uv" maps z to u(v(z)).
    AffineMap acc;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        AffineMap outer = affine_letter(*it);
        acc = AffineMap{outer.scale * acc.scale, outer.scale * acc.shift + outer.shift};
    }
    AffineNormalForm nf;
    nf.sign = acc.scale.real() > 0 ? 1 : -1;
    nf.m = std::llround(acc.shift.real() / 2.0);
    nf.n = std::llround(acc.shift.imag() / 2.0);
    return nf;
}

inline double agm(double a, double g) {
    for (int i = 0; i < 64 && std::abs(a - g) > 4e-16 * g; ++i) {
        double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    return 0.5 * (a + g);
}

// Closed forms for the fundamental periods at real c in (0, 1), matching the
// project's cycle orientation convention.
inline pvi::cplx agm_pi1(double c) {
    double a_val = pvi::kPi / agm(1.0, std::sqrt(c));
    double b_val = pvi::kPi / agm(1.0, std::sqrt(1.0 - c));
    return c * (1.0 - c) * cplx(b_val, -a_val);
}

inline pvi::cplx agm_pi2(double c) {
    double b_val = pvi::kPi / agm(1.0, std::sqrt(1.0 - c));
    return c * (1.0 - c) * cplx(b_val, 0.0);
}

}  // namespace oracle
