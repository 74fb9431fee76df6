#pragma once

#include <cstdint>
#include <string>

#include "pvilab/elliptic.hpp"

namespace pvi {

// Element of G = <a,b,c | a^2 = b^2 = c^2 = (abc)^2 = 1> in its
// Z^2 x| Z_2 model: translation (m, n) in lattice units and a sign.
// Multiplication: (m,n,s)(m',n',s') = (m + s m', n + s n', s s').
struct NormalForm {
    long long m = 0, n = 0;
    int sign = 1;  // +1 or -1

    bool operator==(const NormalForm&) const = default;
    bool is_identity() const { return m == 0 && n == 0 && sign == 1; }
};

NormalForm nf_identity();
NormalForm nf_mul(const NormalForm& x, const NormalForm& y);
NormalForm nf_inverse(const NormalForm& x);
NormalForm nf_letter(char letter);  // 'a', 'b' or 'c'

// Image of a word under a -> ((0,0),-), b -> ((1,0),-), c -> ((0,1),-),
// multiplied left to right.
NormalForm reduce(const std::string& word);

// Word length mod 2; equals the sign part of reduce().
int parity(const std::string& word);

// reduce(u v u^-1 v^-1) for even-parity words; inverses are reversals.
NormalForm kernel_commutator(const std::string& u, const std::string& v);

// 2x2 matrix realization matching the closed-form monodromy generators:
// a -> T0, b -> T1, c -> Tc; a homomorphism for the NormalForm product.
Mat realize(const NormalForm& nf, const Periods& periods);

struct RelationCheckReport {
    long long words_checked = 0;
    long long insertions_checked = 0;
    bool pass = false;
    std::string witness;
};

// Exhaustive relator-insertion invariance over all words of length <= max_len,
// plus `random_insertions` seeded random trials on longer words.
RelationCheckReport relation_invariance(int max_len, int random_insertions,
                                        std::uint64_t seed);

struct KernelFuzzReport {
    int pairs = 0;
    int max_len = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    std::string witness;
};

// Random even pairs; every commutator must reduce to the identity, exactly.
KernelFuzzReport kernel_commutator_fuzz(int pairs, int max_len, std::uint64_t seed,
                                        bool parallel = true);

}  // namespace pvi
