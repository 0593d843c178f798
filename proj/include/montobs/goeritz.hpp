#pragma once

// Checkerboard form of the (1, n1, 2, 1, -3) slice of the family: an 8x8
// symmetric matrix whose determinant is 26 n1 + 51 and whose signature
// vanishes, and the subsequence of n1 with square determinant.

#include <stdexcept>
#include <vector>

#include "montobs/contfrac.hpp"
#include "montobs/matrix.hpp"
#include "montobs/rational.hpp"

namespace montobs {

struct IntegralityViolation : std::domain_error {
    explicit IntegralityViolation(const std::string& what) : std::domain_error(what) {}
};

inline SymIntMatrix goeritz_matrix(long long n1) {
    if (n1 < 1) throw DomainError("n1 must be at least 1");
    const Int n = int_from(n1);
    SymIntMatrix g(8);
    g.set(0, 0, Int(2));
    g.set(0, 1, Int(-1));
    g.set(1, 1, Int(-1));
    g.set(1, 2, Int(1));
    g.set(1, 5, Int(1));
    g.set(2, 2, Int(-2));
    g.set(2, 3, Int(1));
    g.set(3, 3, Int(-2));
    g.set(3, 4, Int(1));
    g.set(4, 4, Int(2));
    g.set(4, 7, Int(-3));
    g.set(5, 5, Int(-2));
    g.set(5, 6, Int(1));
    g.set(6, 6, Int(n + 1));
    g.set(6, 7, Int(-n - 2));
    g.set(7, 7, Int(n + 6));
    return g;
}

inline Int family_determinant(long long n1) {
    Int d = det_exact(goeritz_matrix(n1));
    return abs(d);
}

// Correction term of the checkerboard signature formula. The white
// surface of this family contributes nothing, independent of n1.
inline constexpr int signature_correction = 0;

inline int family_signature(long long n1) {
    const Inertia i = signature_exact(goeritz_matrix(n1));
    return (i.n_plus - i.n_minus) - signature_correction;
}

struct SequenceTerm {
    Int a;    // square root of the determinant
    Int n1;   // (a^2 - 51) / 26
    friend bool operator==(const SequenceTerm&, const SequenceTerm&) = default;
};

// Determinants 26 n1 + 51 that are perfect squares: roots start at 21 and
// alternate steps of 10 and 16, so consecutive same-parity roots differ
// by 26. Every root keeps a^2 = 51 mod 26, hence n1 integral; the check
// stays as a guard on the recurrence.
inline std::vector<SequenceTerm> square_det_sequence(int count) {
    if (count < 0) throw DomainError("term count must be nonnegative");
    std::vector<SequenceTerm> out;
    out.reserve(static_cast<std::size_t>(count));
    Int a(21);
    for (int k = 0; k < count; ++k) {
        Int num = a * a - 51;
        Int n1, rem;
        mpz_fdiv_qr(n1.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), Int(26).get_mpz_t());
        if (rem != 0)
            throw IntegralityViolation("root " + a.get_str() +
                                       " does not give an integral n1");
        out.push_back({a, n1});
        a += (k % 2 == 0) ? 10 : 16;
    }
    return out;
}

}  // namespace montobs
