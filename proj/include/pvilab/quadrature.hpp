#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pvilab/branch.hpp"

namespace pvi {

// A meromorphic 1-form f(lambda, y) dlambda on (a double cover of) the
// lambda-plane.  Forms with needs_branch = false ignore y.
struct Form {
    std::function<cplx(cplx lambda, cplx y)> value;
    bool needs_branch = false;

    static Form rational(std::function<cplx(cplx)> f);
    static Form on_curve(std::function<cplx(cplx, cplx)> f);
};

struct QuadratureOptions {
    double tol = 1e-12;     // per-segment error target
    int base_n = 24;        // initial Chebyshev resolution per segment
    int max_n = 512;        // resolution cap before bisecting a segment
    int max_depth = 24;     // bisection depth cap
    int force_split = 0;    // pre-split each segment 2^force_split times

    QuadratureOptions with_tol(double t) const {
        QuadratureOptions o = *this;
        o.tol = t;
        return o;
    }
    // A strictly finer run, for self-consistency checks.
    QuadratureOptions deeper() const {
        QuadratureOptions o = *this;
        o.tol = tol / 16.0;
        o.force_split += 1;
        return o;
    }
};

// A word of 1-forms, outermost first; length 1..3.
using Word = std::vector<int>;

// Values of iterated integrals, indexed by word, over some path.
using WordValues = std::map<Word, cplx>;

// All contiguous subwords (needed to propagate values across concatenation).
std::vector<Word> subword_closure(const std::vector<Word>& words);

// Chen concatenation: values over path1 . path2 from values over the parts.
// Both maps must contain every contiguous subword of the requested words.
WordValues chen_concatenate(const WordValues& on_first, const WordValues& on_second);

// Iterated integrals of `words` in `forms` along `path`.  If a branch is
// given it must sit at the path start; it is advanced to the path end.
WordValues path_signature(const Path& path, const std::vector<Form>& forms,
                          const std::vector<Word>& words, BranchState* branch,
                          const QuadratureOptions& opts);

// Ordinary contour integral of one form (adaptive, error < opts.tol per segment).
cplx integrate_form(const Form& form, const Path& path, BranchState* branch,
                    const QuadratureOptions& opts);

// Length <= 3 iterated integral, outermost form first.
cplx iterated_integral(const std::vector<Form>& word_forms, const Path& path,
                       BranchState* branch, const QuadratureOptions& opts);

}  // namespace pvi
