#pragma once

// The two-parameter-per-leg family: parameters (m1, n1, m2, n2, q) with
// m_i, n_i >= 1 and q <= -1 describe a Montesinos link whose double
// branched cover bounds the plumbings built here. Tangle fractions are
// evaluated in the minus convention.

#include <string>
#include <vector>

#include "montobs/contfrac.hpp"
#include "montobs/plumbing.hpp"
#include "montobs/rational.hpp"

namespace montobs {

struct FamilyParams {
    long long m1, n1, m2, n2, q;

    FamilyParams(long long m1_, long long n1_, long long m2_, long long n2_, long long q_)
        : m1(m1_), n1(n1_), m2(m2_), n2(n2_), q(q_) {
        if (m1 < 1 || n1 < 1 || m2 < 1 || n2 < 1)
            throw DomainError("family parameters need m1, n1, m2, n2 >= 1");
        if (q > -1) throw DomainError("family parameters need q <= -1");
    }

    friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

// A Montesinos datum: the integer coefficient e and the tangle fractions
// alpha/beta, each with alpha and beta coprime.
struct MontesinosData {
    Int e;
    std::vector<Rational> tangles;
};

inline MontesinosData family_to_montesinos(const FamilyParams& p) {
    return MontesinosData{
        Int(0),
        {evaluate(ContinuedFraction{p.m1 + 1, p.n1 + 2}),
         evaluate(ContinuedFraction{p.m2 + 1, p.n2 + 2}),
         Rational(int_from(p.q))},
    };
}

// e + sum beta_i/alpha_i for the family, in closed form:
//   (n_i+2) / ((m_i+1) n_i + 2 m_i + 1) per leg plus 1/q.
// Positive sign here decides negative definiteness of the reduced form.
inline Rational nr_value(const FamilyParams& p) {
    const Rational closed =
        Rational(p.n1 + 2, (p.m1 + 1) * p.n1 + 2 * p.m1 + 1) +
        Rational(p.n2 + 2, (p.m2 + 1) * p.n2 + 2 * p.m2 + 1) +
        Rational(1, p.q);
    const MontesinosData md = family_to_montesinos(p);
    const Rational from_tangles = neumann_raymond(md.e, md.tangles);
    if (closed != from_tangles)
        throw std::logic_error("tangle route disagrees with closed form: " +
                               closed.str() + " vs " + from_tangles.str());
    return closed;
}

// Star plumbing with center 0 and legs [-1,-1,(-2)^m1,-3,(-2)^n1],
// [-1,-1,(-2)^m2,-3,(-2)^n2], [q]. Vertex count m1+n1+m2+n2+8.
inline PlumbingGraph build_family_raw(const FamilyParams& p) {
    return build_star_plumbing(
        Int(0),
        {family_expansion(p.m1, p.n1), family_expansion(p.m2, p.n2),
         ContinuedFraction{p.q}});
}

// The reduced chain: (-2)^n1, -3, (-2)^(m1-1), -2, (-2)^(m2-1), -3,
// (-2)^n2 along a path, plus a q-weighted leaf on the middle -2 written
// above (the chain position n1+m1+1). Rank n1+m1+m2+n2+2.
inline PlumbingGraph build_family_reduced(const FamilyParams& p) {
    const long long chain = p.n1 + p.m1 + p.m2 + p.n2 + 1;
    std::vector<Int> w;
    w.reserve(static_cast<std::size_t>(chain + 1));
    for (long long i = 0; i < p.n1; ++i) w.push_back(-2);
    w.push_back(-3);
    for (long long i = 0; i < p.m1 - 1; ++i) w.push_back(-2);
    w.push_back(-2);   // the center: carries the q leaf
    for (long long i = 0; i < p.m2 - 1; ++i) w.push_back(-2);
    w.push_back(-3);
    for (long long i = 0; i < p.n2; ++i) w.push_back(-2);
    w.push_back(int_from(p.q));

    std::vector<std::pair<int, int>> edges;
    for (long long i = 1; i < chain; ++i)
        edges.emplace_back(static_cast<int>(i), static_cast<int>(i + 1));
    const int center = static_cast<int>(p.n1 + p.m1 + 1);
    edges.emplace_back(center, static_cast<int>(chain + 1));
    return PlumbingGraph::from_weights(w, edges);
}

// Knot or link, decided by determinant parity of the raw plumbing form:
// odd |det| means one component. The linear-time tree determinant keeps
// this usable at large n1.
inline bool is_knot(const FamilyParams& p) {
    const Int d = tree_det(build_family_raw(p));
    return mpz_odd_p(d.get_mpz_t()) != 0;
}

// |det| of the reduced intersection form; for knots this is the knot
// determinant.
inline Int knot_determinant(const FamilyParams& p) {
    Int d = det_exact(intersection_form(build_family_reduced(p)));
    return abs(d);
}

}  // namespace montobs
