#include "pvilab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace pvi {

Form Form::rational(std::function<cplx(cplx)> f) {
    Form fm;
    fm.value = [f = std::move(f)](cplx lambda, cplx) { return f(lambda); };
    fm.needs_branch = false;
    return fm;
}

Form Form::on_curve(std::function<cplx(cplx, cplx)> f) {
    Form fm;
    fm.value = std::move(f);
    fm.needs_branch = true;
    return fm;
}

namespace {

// ---- Chebyshev machinery on one segment --------------------------------
//
// Node j sits at x_j = cos(pi j / N), mapped to the segment parameter
// s_j = (1 - x_j)/2, so nodes run from s = 0 to s = 1.

std::vector<cplx> cheb_transform(const std::vector<cplx>& v) {
    const int n = static_cast<int>(v.size()) - 1;
    std::vector<cplx> a(n + 1);
    for (int k = 0; k <= n; ++k) {
        cplx sum = 0.5 * (v[0] + (k % 2 == 0 ? v[n] : -v[n]));
        for (int j = 1; j < n; ++j) sum += v[j] * std::cos(kPi * j * k / n);
        a[k] = sum * (2.0 / n);
    }
    a[0] *= 0.5;
    a[n] *= 0.5;
    return a;
}

cplx cheb_eval(const std::vector<cplx>& a, double x) {
    // Clenshaw recurrence.
    cplx b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(a.size()) - 1; k >= 1; --k) {
        cplx b0 = 2.0 * x * b1 - b2 + a[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + a[0];
}

// Coefficients of H(s) = integral_0^s g, same basis (degree + 1).
std::vector<cplx> cheb_antiderivative(const std::vector<cplx>& a) {
    const int n = static_cast<int>(a.size()) - 1;
    auto coef = [&](int k) { return (k >= 0 && k <= n) ? a[k] : cplx(0.0); };
    std::vector<cplx> b(n + 2, cplx(0.0));
    b[1] = coef(0) - 0.5 * coef(2);
    for (int k = 2; k <= n + 1; ++k) b[k] = (coef(k - 1) - coef(k + 1)) / (2.0 * k);
    // H = -(G - G(1))/2 under s = (1-x)/2.
    cplx g1 = 0.0;
    for (int k = 1; k <= n + 1; ++k) g1 += b[k];
    std::vector<cplx> h(n + 2);
    h[0] = 0.5 * g1;
    for (int k = 1; k <= n + 1; ++k) h[k] = -0.5 * b[k];
    return h;
}

double tail_magnitude(const std::vector<cplx>& a) {
    double m = 0.0;
    int n = static_cast<int>(a.size());
    for (int k = std::max(1, (3 * n) / 4); k < n; ++k) m = std::max(m, std::abs(a[k]));
    return m;
}

struct SegmentResult {
    WordValues values;
    cplx y_end = 0.0;
    double est_error = 0.0;
};

// One fixed-resolution evaluation of all closure words on one segment.
// y_in is the branch value at the segment start (ignored if !needs_branch).
SegmentResult segment_words_fixed(const Segment& seg, const std::vector<Form>& forms,
                                  const std::vector<Word>& closure, bool needs_branch,
                                  cplx c, cplx y_in, int n) {
    std::vector<double> xs(n + 1), ss(n + 1);
    for (int j = 0; j <= n; ++j) {
        xs[j] = std::cos(kPi * j / n);
        ss[j] = 0.5 * (1.0 - xs[j]);
    }

    std::vector<cplx> lam(n + 1), vel(n + 1), yy(n + 1, cplx(0.0));
    for (int j = 0; j <= n; ++j) {
        lam[j] = seg.point(ss[j]);
        vel[j] = seg.velocity(ss[j]);
    }

    if (needs_branch) {
        cplx prev = y_in;
        for (int j = 0; j <= n; ++j) {
            cplx root = std::sqrt(cubic_value(c, lam[j]));
            cplx cand = (std::abs(root - prev) <= std::abs(-root - prev)) ? root : -root;
            double gap = std::abs(2.0 * root);
            if (gap < 10.0 * std::abs(cand - prev))
                throw NumericError("quadrature: branch ambiguity on segment (node spacing)");
            yy[j] = cand;
            prev = cand;
        }
    }

    // Node values of each pulled-back form.
    std::vector<std::vector<cplx>> g(forms.size(), std::vector<cplx>(n + 1));
    std::vector<bool> have(forms.size(), false);
    auto form_values = [&](int i) -> const std::vector<cplx>& {
        if (!have[i]) {
            for (int j = 0; j <= n; ++j) g[i][j] = forms[i].value(lam[j], yy[j]) * vel[j];
            have[i] = true;
        }
        return g[i];
    };

    // cum(w)[j] = iterated integral of word w from segment start to node j.
    std::map<Word, std::vector<cplx>> cum;
    std::function<const std::vector<cplx>&(const Word&)> cum_of =
        [&](const Word& w) -> const std::vector<cplx>& {
        auto it = cum.find(w);
        if (it != cum.end()) return it->second;
        std::vector<cplx> integrand;
        if (w.size() == 1) {
            integrand = form_values(w[0]);
        } else {
            Word suffix(w.begin() + 1, w.end());
            const std::vector<cplx>& inner = cum_of(suffix);
            const std::vector<cplx>& outer = form_values(w[0]);
            integrand.resize(n + 1);
            for (int j = 0; j <= n; ++j) integrand[j] = outer[j] * inner[j];
        }
        std::vector<cplx> coeffs = cheb_transform(integrand);
        std::vector<cplx> h = cheb_antiderivative(coeffs);
        std::vector<cplx> vals(n + 1);
        for (int j = 0; j <= n; ++j) vals[j] = cheb_eval(h, xs[j]);
        auto [pos, _] = cum.emplace(w, std::move(vals));
        return pos->second;
    };

    SegmentResult res;
    double tail = 0.0;
    for (const Word& w : closure) {
        const std::vector<cplx>& vals = cum_of(w);
        res.values[w] = vals[n];
        if (w.size() == 1) tail = std::max(tail, tail_magnitude(cheb_transform(form_values(w[0]))));
    }
    res.y_end = needs_branch ? yy[n] : cplx(0.0);
    res.est_error = tail;
    return res;
}

WordValues identity_signature(const std::vector<Word>& closure) {
    WordValues v;
    for (const Word& w : closure) v[w] = 0.0;
    return v;
}

double values_diff(const WordValues& a, const WordValues& b) {
    double d = 0.0;
    for (const auto& [w, v] : a) d = std::max(d, std::abs(v - b.at(w)));
    return d;
}

// Adaptive evaluation on one segment: raise resolution, then bisect.
SegmentResult segment_words_adaptive(const Segment& seg, const std::vector<Form>& forms,
                                     const std::vector<Word>& closure, bool needs_branch,
                                     cplx c, cplx y_in, const QuadratureOptions& opts,
                                     int depth) {
    int n = opts.base_n;
    bool have_coarse = false;
    SegmentResult coarse;
    try {
        coarse = segment_words_fixed(seg, forms, closure, needs_branch, c, y_in, n);
        have_coarse = true;
    } catch (const NumericError&) {
        // branch ambiguity at this resolution; bisect below
    }
    while (have_coarse && 2 * n <= opts.max_n) {
        SegmentResult fine;
        try {
            fine = segment_words_fixed(seg, forms, closure, needs_branch, c, y_in, 2 * n);
        } catch (const NumericError&) {
            break;
        }
        if (values_diff(coarse.values, fine.values) <= opts.tol && fine.est_error <= opts.tol) {
            fine.est_error = values_diff(coarse.values, fine.values);
            return fine;
        }
        coarse = fine;
        n *= 2;
    }
    if (depth >= opts.max_depth)
        throw NumericError("quadrature: no convergence within max subdivisions "
                           "(path too close to a singularity?)");
    // Bisect and stitch the halves back together with the Chen rule.
    Segment left = seg, right = seg;
    if (seg.kind == Segment::Kind::Line) {
        cplx mid = seg.point(0.5);
        left = Segment::line(seg.z0, mid);
        right = Segment::line(mid, seg.z1);
    } else {
        double tm = 0.5 * (seg.theta0 + seg.theta1);
        left = Segment::arc(seg.center, seg.radius, seg.theta0, tm);
        right = Segment::arc(seg.center, seg.radius, tm, seg.theta1);
    }
    SegmentResult a = segment_words_adaptive(left, forms, closure, needs_branch, c, y_in, opts, depth + 1);
    SegmentResult b = segment_words_adaptive(right, forms, closure, needs_branch, c,
                                             needs_branch ? a.y_end : cplx(0.0), opts, depth + 1);
    SegmentResult out;
    out.values = chen_concatenate(a.values, b.values);
    out.y_end = b.y_end;
    out.est_error = a.est_error + b.est_error;
    return out;
}

}  // namespace

std::vector<Word> subword_closure(const std::vector<Word>& words) {
    std::vector<Word> closure;
    auto add = [&](const Word& w) {
        if (std::find(closure.begin(), closure.end(), w) == closure.end()) closure.push_back(w);
    };
    for (const Word& w : words) {
        if (w.empty() || w.size() > 3) throw DomainError("word length must be 1..3");
        for (size_t i = 0; i < w.size(); ++i)
            for (size_t j = i; j < w.size(); ++j) add(Word(w.begin() + i, w.begin() + j + 1));
    }
    return closure;
}

WordValues chen_concatenate(const WordValues& on_first, const WordValues& on_second) {
    WordValues out;
    for (const auto& [w, unused] : on_first) {
        (void)unused;
        cplx total = 0.0;
        // Sum over splits w = prefix . suffix; prefix integrates over the
        // later piece (outermost forms are integrated last).
        for (size_t k = 0; k <= w.size(); ++k) {
            Word prefix(w.begin(), w.begin() + k);
            Word suffix(w.begin() + k, w.end());
            cplx left = prefix.empty() ? cplx(1.0) : on_second.at(prefix);
            cplx right = suffix.empty() ? cplx(1.0) : on_first.at(suffix);
            total += left * right;
        }
        out[w] = total;
    }
    return out;
}

WordValues path_signature(const Path& path, const std::vector<Form>& forms,
                          const std::vector<Word>& words, BranchState* branch,
                          const QuadratureOptions& opts) {
    bool needs_branch = false;
    for (const Form& f : forms) needs_branch = needs_branch || f.needs_branch;
    if (needs_branch && branch == nullptr)
        throw DomainError("path_signature: forms need a branch state");
    if (branch != nullptr && !path.empty() &&
        std::abs(branch->lambda() - path.start()) > 1e-9 * std::max(1.0, std::abs(path.start())))
        throw DomainError("path_signature: branch state not at the path start");

    std::vector<Word> closure = subword_closure(words);
    WordValues running = identity_signature(closure);
    cplx c = branch ? branch->c() : cplx(0.0);
    cplx y = branch ? branch->y() : cplx(0.0);

    for (const Segment& seg : path.segments()) {
        std::vector<Segment> pieces{seg};
        for (int split = 0; split < opts.force_split; ++split) {
            std::vector<Segment> next;
            for (const Segment& p : pieces) {
                if (p.kind == Segment::Kind::Line) {
                    cplx mid = p.point(0.5);
                    next.push_back(Segment::line(p.z0, mid));
                    next.push_back(Segment::line(mid, p.z1));
                } else {
                    double tm = 0.5 * (p.theta0 + p.theta1);
                    next.push_back(Segment::arc(p.center, p.radius, p.theta0, tm));
                    next.push_back(Segment::arc(p.center, p.radius, tm, p.theta1));
                }
            }
            pieces = std::move(next);
        }
        for (const Segment& piece : pieces) {
            SegmentResult r =
                segment_words_adaptive(piece, forms, closure, needs_branch, c, y, opts, 0);
            running = chen_concatenate(running, r.values);
            if (needs_branch) y = r.y_end;
        }
    }
    if (branch != nullptr && needs_branch && !path.empty())
        *branch = BranchState(c, path.end(), y);

    WordValues out;
    for (const Word& w : words) out[w] = running.at(w);
    return out;
}

cplx integrate_form(const Form& form, const Path& path, BranchState* branch,
                    const QuadratureOptions& opts) {
    if (path.empty()) return 0.0;
    Word w{0};
    WordValues v = path_signature(path, {form}, {w}, branch, opts);
    return v.at(w);
}

cplx iterated_integral(const std::vector<Form>& word_forms, const Path& path,
                       BranchState* branch, const QuadratureOptions& opts) {
    if (word_forms.empty() || word_forms.size() > 3)
        throw DomainError("iterated_integral: word length must be 1..3");
    if (path.empty()) return 0.0;
    Word w;
    for (size_t i = 0; i < word_forms.size(); ++i) w.push_back(static_cast<int>(i));
    WordValues v = path_signature(path, word_forms, {w}, branch, opts);
    return v.at(w);
}

}  // namespace pvi
