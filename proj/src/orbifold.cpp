#include "pvilab/orbifold.hpp"

#include "pvilab/monodromy.hpp"

namespace pvi {

NormalForm nf_identity() { return NormalForm{}; }

NormalForm nf_mul(const NormalForm& x, const NormalForm& y) {
    return NormalForm{x.m + x.sign * y.m, x.n + x.sign * y.n, x.sign * y.sign};
}

NormalForm nf_inverse(const NormalForm& x) {
    return NormalForm{-x.sign * x.m, -x.sign * x.n, x.sign};
}

NormalForm nf_letter(char letter) {
    switch (letter) {
        case 'a': return NormalForm{0, 0, -1};
        case 'b': return NormalForm{1, 0, -1};
        case 'c': return NormalForm{0, 1, -1};
        default: throw DomainError("orbifold: letters are a, b, c");
    }
}

NormalForm reduce(const std::string& word) {
    NormalForm nf = nf_identity();
    for (char ch : word) nf = nf_mul(nf, nf_letter(ch));
    return nf;
}

int parity(const std::string& word) { return static_cast<int>(word.size() % 2); }

NormalForm kernel_commutator(const std::string& u, const std::string& v) {
    if (parity(u) != 0 || parity(v) != 0)
        throw DomainError("kernel_commutator: words must have even parity");
    std::string w = u + v + std::string(u.rbegin(), u.rend()) + std::string(v.rbegin(), v.rend());
    return reduce(w);
}

Mat realize(const NormalForm& nf, const Periods& periods) {
    if (std::abs(std::imag(periods.pi2 / periods.pi1)) < 1e-9)
        throw DomainError("realize: periods are dependent over R");
    cplx translation = static_cast<double>(nf.m) * periods.pi1 +
                       static_cast<double>(nf.n) * periods.pi2;
    Mat r(2);
    r.at(0, 0) = static_cast<double>(nf.sign);
    r.at(1, 0) = -static_cast<double>(nf.sign) * translation;
    r.at(1, 1) = 1.0;
    return r;
}

namespace {

const char* kRelators[4] = {"aa", "bb", "cc", "abcabc"};

bool insertion_invariant(const std::string& word, std::string* witness) {
    NormalForm expect = reduce(word);
    for (const char* rel : kRelators) {
        for (size_t pos = 0; pos <= word.size(); ++pos) {
            std::string probe = word.substr(0, pos) + rel + word.substr(pos);
            if (!(reduce(probe) == expect)) {
                if (witness) *witness = word + " + " + rel + " @ " + std::to_string(pos);
                return false;
            }
        }
    }
    return true;
}

std::string random_word(SampleRng& rng, int len) {
    std::string w(len, 'a');
    for (char& ch : w) ch = static_cast<char>('a' + rng.below(3));
    return w;
}

}  // namespace

RelationCheckReport relation_invariance(int max_len, int random_insertions,
                                        std::uint64_t seed) {
    RelationCheckReport report;
    report.pass = true;

    // Exhaustive sweep over all words of length <= max_len.
    std::string word;
    std::function<void(int)> walk = [&](int remaining) {
        if (!report.pass) return;
        ++report.words_checked;
        report.insertions_checked += 4 * static_cast<long long>(word.size() + 1);
        if (!insertion_invariant(word, &report.witness)) {
            report.pass = false;
            return;
        }
        if (remaining == 0) return;
        for (char ch : {'a', 'b', 'c'}) {
            word.push_back(ch);
            walk(remaining - 1);
            word.pop_back();
        }
    };
    walk(max_len);

    // Random insertions on longer words.
    for (int i = 0; report.pass && i < random_insertions; ++i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        std::string w = random_word(rng, max_len + 1 + rng.below(3 * max_len));
        const char* rel = kRelators[rng.below(4)];
        size_t pos = static_cast<size_t>(rng.below(static_cast<int>(w.size()) + 1));
        std::string probe = w.substr(0, pos) + rel + w.substr(pos);
        ++report.insertions_checked;
        if (!(reduce(probe) == reduce(w))) {
            report.pass = false;
            report.witness = w + " + " + rel + " @ " + std::to_string(pos);
        }
    }
    return report;
}

KernelFuzzReport kernel_commutator_fuzz(int pairs, int max_len, std::uint64_t seed,
                                        bool parallel) {
    std::vector<char> ok(pairs, 1);
    std::vector<std::string> bad(pairs);

    auto body = [&](int i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        int lu = 2 * (1 + rng.below(max_len / 2));
        int lv = 2 * (1 + rng.below(max_len / 2));
        std::string u = random_word(rng, lu);
        std::string v = random_word(rng, lv);
        if (!kernel_commutator(u, v).is_identity()) {
            ok[i] = 0;
            bad[i] = u + " , " + v;
        }
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < pairs; ++i) body(i);
    } else {
        for (int i = 0; i < pairs; ++i) body(i);
    }

    KernelFuzzReport report;
    report.pairs = pairs;
    report.max_len = max_len;
    report.seed = seed;
    report.pass = true;
    for (int i = 0; i < pairs; ++i) {
        if (!ok[i]) {
            report.pass = false;
            if (report.witness.empty()) report.witness = bad[i];
        }
    }
    return report;
}

}  // namespace pvi
