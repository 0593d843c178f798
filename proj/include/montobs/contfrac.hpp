#pragma once

// Continued fractions in the minus convention:
//     [a1, a2, ..., ak] = a1 - 1/(a2 - 1/(... - 1/ak)).
// Every rational r < -1 has a unique expansion with all terms <= -2; that
// canonical form is what the plumbing legs are built from.

#include <deque>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "montobs/rational.hpp"

namespace montobs {

struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

struct ZeroInput : std::domain_error {
    ZeroInput() : std::domain_error("cannot expand zero") {}
};

struct ContinuedFraction {
    std::vector<Int> terms;

    explicit ContinuedFraction(std::vector<Int> t) : terms(std::move(t)) {
        if (terms.empty()) throw std::invalid_argument("empty continued fraction");
    }
    ContinuedFraction(std::initializer_list<long long> t) {
        for (long long x : t) terms.push_back(int_from(x));
        if (terms.empty()) throw std::invalid_argument("empty continued fraction");
    }

    friend bool operator==(const ContinuedFraction& a, const ContinuedFraction& b) {
        return a.terms == b.terms;
    }
};

// Folds from the tail. Throws ZeroDenominator when a proper tail evaluates
// to zero and a division by it is required; the full value itself may be 0.
inline Rational evaluate(const ContinuedFraction& cf) {
    Rational r(cf.terms.back());
    for (auto it = cf.terms.rbegin() + 1; it != cf.terms.rend(); ++it) {
        if (r.sign() == 0) throw ZeroDenominator();
        r = Rational(*it) - r.reciprocal();
    }
    return r;
}

// [-1, -1, (-2) x m, -3, (-2) x n]: the length-(m+n+3) leg expansion used
// by the raw plumbing. Requires m, n >= 1.
inline ContinuedFraction family_expansion(long long m, long long n) {
    if (m < 1 || n < 1) throw DomainError("family expansion needs m, n >= 1");
    std::vector<Int> t;
    t.reserve(static_cast<std::size_t>(m + n + 3));
    t.push_back(-1);
    t.push_back(-1);
    for (long long i = 0; i < m; ++i) t.push_back(-2);
    t.push_back(-3);
    for (long long i = 0; i < n; ++i) t.push_back(-2);
    return ContinuedFraction(std::move(t));
}

namespace detail {

// Keys exact rationals for the visited set of the shortest-expansion search.
inline std::pair<Int, Int> key_of(const Rational& r) { return {r.num(), r.den()}; }

}  // namespace detail

// For r < -1 returns the unique expansion with every term <= -2 (iterated
// ceiling division, seen from the negative side as floor steps). For other
// nonzero r returns a shortest expansion evaluating to r, found by
// breadth-first search over the two Euclidean branches floor(r) and
// floor(r)+1; ties resolve to the floor branch, so the result is
// deterministic. Denominators strictly decrease along both branches, which
// bounds the search.
inline ContinuedFraction rational_to_negcf(const Rational& r) {
    if (r.sign() == 0) throw ZeroInput();
    if (r.is_integer()) return ContinuedFraction(std::vector<Int>{r.num()});

    if (r < Rational(-1)) {
        std::vector<Int> terms;
        Rational cur = r;
        while (!cur.is_integer()) {
            Int a = cur.floor();
            terms.push_back(a);
            cur = (Rational(a) - cur).reciprocal();
        }
        terms.push_back(cur.num());
        return ContinuedFraction(std::move(terms));
    }

    struct Node {
        Rational value;
        std::vector<Int> prefix;
    };
    std::deque<Node> queue;
    std::map<std::pair<Int, Int>, bool> seen;
    queue.push_back({r, {}});
    seen[detail::key_of(r)] = true;
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        const Int f = node.value.floor();
        for (int step = 0; step < 2; ++step) {
            Int a = f + step;
            Rational next = (Rational(a) - node.value).reciprocal();
            std::vector<Int> prefix = node.prefix;
            prefix.push_back(a);
            if (next.is_integer()) {
                prefix.push_back(next.num());
                return ContinuedFraction(std::move(prefix));
            }
            auto key = detail::key_of(next);
            if (!seen[key]) {
                seen[key] = true;
                queue.push_back({next, std::move(prefix)});
            }
        }
    }
    throw std::logic_error("shortest expansion search cannot exhaust");
}

}  // namespace montobs
