#pragma once

// Embedding search for negative definite integer forms: decide whether
// A^T A = -Q has an integer solution A of the same order, by exhaustive
// search over the column images. Fresh coordinate axes are consumed left
// to right, with positive nonincreasing entries on first use, so each
// signed-permutation orbit of solutions is visited exactly once.

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "montobs/contfrac.hpp"
#include "montobs/matrix.hpp"
#include "montobs/rational.hpp"

namespace montobs {

struct NotNegativeDefinite : std::domain_error {
    NotNegativeDefinite() : std::domain_error("form is not negative definite") {}
};

struct EmbeddingWitness {
    // columns[i] is the image of the i-th basis vector.
    std::vector<std::vector<Int>> columns;
};

enum class SearchStatus { exhausted, found, aborted };

struct SearchOutcome {
    SearchStatus status = SearchStatus::exhausted;
    std::optional<EmbeddingWitness> witness;
    std::uint64_t nodes_explored = 0;
};

struct SearchOptions {
    std::uint64_t node_budget = 1'000'000'000ULL;
    int threads = 1;
};

// All integer vectors of the given squared length, in lexicographic
// order. Empty for a negative target.
inline std::vector<std::vector<Int>> enumerate_norm_vectors(int dim, const Int& norm) {
    if (dim < 0) throw DomainError("dimension must be nonnegative");
    std::vector<std::vector<Int>> out;
    if (norm < 0) return out;
    const long long total = to_int64(norm);
    std::vector<long long> cur(static_cast<std::size_t>(dim), 0);
    std::function<void(int, long long)> rec = [&](int pos, long long rem) {
        if (pos == dim) {
            if (rem == 0) {
                std::vector<Int> v;
                v.reserve(cur.size());
                for (long long x : cur) v.push_back(int_from(x));
                out.push_back(std::move(v));
            }
            return;
        }
        long long b = static_cast<long long>(std::sqrt(static_cast<double>(rem)));
        while (b * b > rem) --b;
        while ((b + 1) * (b + 1) <= rem) ++b;
        for (long long x = -b; x <= b; ++x) {
            cur[static_cast<std::size_t>(pos)] = x;
            rec(pos + 1, rem - x * x);
        }
        cur[static_cast<std::size_t>(pos)] = 0;
    };
    rec(0, total);
    return out;
}

// True iff the witness shape matches and the column Gram matrix is -Q.
inline bool verify_witness(const SymIntMatrix& q, const EmbeddingWitness& w) {
    const int n = q.order();
    if (static_cast<int>(w.columns.size()) != n)
        throw DimensionMismatch("witness column count differs from the form order");
    for (const auto& c : w.columns)
        if (static_cast<int>(c.size()) != n)
            throw DimensionMismatch("witness column length differs from the form order");
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Int acc(0);
            for (int a = 0; a < n; ++a) acc += w.columns[i][a] * w.columns[j][a];
            if (acc != -q(i, j)) return false;
        }
    return true;
}

namespace detail {

inline long long isqrt_ll(long long s) {
    if (s <= 0) return 0;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(s)));
    while (r > 0 && r * r > s) --r;
    while ((r + 1) * (r + 1) <= s) ++r;
    return r;
}

struct EmbedProblem {
    int n = 0;
    std::vector<std::vector<long long>> target;   // -Q, rows in search order
    std::vector<int> order;                       // level -> original index
};

// One depth-first searcher. Column k is built axis by axis over the
// already-used coordinates (values 0, 1, -1, 2, -2, ...), then completed
// with a nonincreasing block of positive entries on fresh axes. Partial
// inner products against earlier columns are pruned by Cauchy-Schwarz on
// the suffix and pinned exactly once the earlier column's support ends.
struct EmbedWorker {
    const EmbedProblem& prob;
    std::atomic<std::uint64_t>& nodes;
    std::uint64_t budget;
    std::atomic<int>& stop_above;
    int candidate_index = 0;

    std::vector<std::vector<long long>> cols;
    std::vector<std::vector<long long>> suffix;   // suffix[j][a] = sum_{b >= a} cols[j][b]^2
    std::vector<int> maxaxis;                     // one past the last nonzero entry
    int used = 0;
    bool aborted = false;
    std::vector<std::vector<long long>> result;

    bool halted() const {
        return aborted || stop_above.load(std::memory_order_relaxed) < candidate_index;
    }

    bool commit(int k, const std::vector<long long>& v, int fresh) {
        if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > budget) {
            aborted = true;
            return false;
        }
        cols.push_back(v);
        std::vector<long long> suf(static_cast<std::size_t>(prob.n) + 1, 0);
        int top = 0;
        for (int a = prob.n - 1; a >= 0; --a) {
            suf[a] = suf[a + 1] + v[a] * v[a];
            if (!top && v[a] != 0) top = a + 1;
        }
        suffix.push_back(std::move(suf));
        maxaxis.push_back(top);
        used += fresh;
        const bool won = search_level(k + 1);
        if (!won) {
            cols.pop_back();
            suffix.pop_back();
            maxaxis.pop_back();
            used -= fresh;
        }
        return won;
    }

    bool fresh_block(int k, long long s, int axis, long long cap, std::vector<long long>& v) {
        if (halted()) return false;
        if (s == 0) return commit(k, v, axis - used);
        if (axis == prob.n) return false;
        for (long long part = std::min(cap, isqrt_ll(s)); part >= 1; --part) {
            v[static_cast<std::size_t>(axis)] = part;
            if (fresh_block(k, s - part * part, axis + 1, part, v)) return true;
            v[static_cast<std::size_t>(axis)] = 0;
            if (halted()) return false;
        }
        return false;
    }

    bool extend_axis(int k, int axis, long long rem, std::vector<long long>& v,
                     std::vector<long long>& partial) {
        if (halted()) return false;
        if (axis == used) return fresh_block(k, rem, used, isqrt_ll(rem), v);
        const long long b = isqrt_ll(rem);
        for (long long mag = 0; mag <= b; ++mag) {
            for (int sgn = 0; sgn < (mag == 0 ? 1 : 2); ++sgn) {
                const long long x = sgn ? -mag : mag;
                const long long rem2 = rem - x * x;
                bool ok = true;
                for (int j = 0; j < k; ++j) {
                    if (maxaxis[j] <= axis) continue;
                    const long long pj = partial[j] + x * cols[j][static_cast<std::size_t>(axis)];
                    const long long gap = prob.target[k][j] - pj;
                    if (maxaxis[j] == axis + 1) {
                        if (gap != 0) { ok = false; break; }
                    } else {
                        const __int128 lhs = static_cast<__int128>(gap) * gap;
                        const __int128 rhs = static_cast<__int128>(rem2) * suffix[j][axis + 1];
                        if (lhs > rhs) { ok = false; break; }
                    }
                }
                if (!ok) continue;
                v[static_cast<std::size_t>(axis)] = x;
                for (int j = 0; j < k; ++j)
                    partial[j] += x * cols[j][static_cast<std::size_t>(axis)];
                if (extend_axis(k, axis + 1, rem2, v, partial)) return true;
                for (int j = 0; j < k; ++j)
                    partial[j] -= x * cols[j][static_cast<std::size_t>(axis)];
                v[static_cast<std::size_t>(axis)] = 0;
                if (halted()) return false;
            }
        }
        return false;
    }

    bool search_level(int k) {
        if (k == prob.n) {
            result = cols;
            return true;
        }
        std::vector<long long> v(static_cast<std::size_t>(prob.n), 0);
        std::vector<long long> partial(static_cast<std::size_t>(k), 0);
        return extend_axis(k, 0, prob.target[k][k], v, partial);
    }
};

inline EmbedProblem make_problem(const SymIntMatrix& q) {
    const int n = q.order();
    EmbedProblem prob;
    prob.n = n;
    prob.order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) prob.order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(prob.order.begin(), prob.order.end(),
                     [&](int a, int b) { return -q(a, a) > -q(b, b); });
    constexpr long long kMaxEntry = 400'000'000'000'000'000LL;
    prob.target.assign(static_cast<std::size_t>(n),
                       std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            long long t = to_int64(Int(-q(prob.order[k], prob.order[l])));
            if (t > kMaxEntry || t < -kMaxEntry)
                throw DomainError("form entry too large for the embedding search");
            prob.target[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = t;
        }
    return prob;
}

// Nonincreasing positive square decompositions of s: the level-0
// candidate columns, largest leading entry first.
inline std::vector<std::vector<long long>> level0_candidates(const EmbedProblem& prob) {
    std::vector<std::vector<long long>> out;
    if (prob.n == 0) return out;
    std::vector<long long> v(static_cast<std::size_t>(prob.n), 0);
    std::function<void(long long, int, long long)> rec = [&](long long s, int axis,
                                                             long long cap) {
        if (s == 0) {
            out.push_back(v);
            return;
        }
        if (axis == prob.n) return;
        for (long long part = std::min(cap, isqrt_ll(s)); part >= 1; --part) {
            v[static_cast<std::size_t>(axis)] = part;
            rec(s - part * part, axis + 1, part);
            v[static_cast<std::size_t>(axis)] = 0;
        }
    };
    rec(prob.target[0][0], 0, isqrt_ll(prob.target[0][0]));
    return out;
}

inline EmbeddingWitness unpermute(const EmbedProblem& prob,
                                  const std::vector<std::vector<long long>>& cols) {
    EmbeddingWitness w;
    w.columns.assign(static_cast<std::size_t>(prob.n),
                     std::vector<Int>(static_cast<std::size_t>(prob.n), Int(0)));
    for (int k = 0; k < prob.n; ++k)
        for (int a = 0; a < prob.n; ++a)
            w.columns[static_cast<std::size_t>(prob.order[k])][static_cast<std::size_t>(a)] =
                int_from(cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
    return w;
}

}  // namespace detail

// Decide A^T A = -Q over the integers, Q negative definite. The witness,
// when one exists, is the first solution in search order; an exhausted
// search proves there is none. With threads > 1 the top-level candidates
// fan out to a pool and the lowest-index witness wins, so the verdict
// stays deterministic; node counts then depend on scheduling only when a
// witness or the budget cuts the run short.
inline SearchOutcome find_embedding(const SymIntMatrix& q, const SearchOptions& opts = {}) {
    if (!is_negative_definite(q)) throw NotNegativeDefinite();
    const detail::EmbedProblem prob = detail::make_problem(q);

    std::atomic<std::uint64_t> nodes{0};
    std::atomic<int> stop_above{INT_MAX};
    SearchOutcome out;

    auto finish_found = [&](const std::vector<std::vector<long long>>& cols) {
        out.status = SearchStatus::found;
        out.witness = detail::unpermute(prob, cols);
        if (!verify_witness(q, *out.witness))
            throw std::logic_error("search produced a witness that fails verification");
    };

    const int want = std::max(1, opts.threads);
    auto candidates = detail::level0_candidates(prob);
    if (want == 1 || candidates.size() <= 1) {
        detail::EmbedWorker w{prob, nodes, opts.node_budget, stop_above, 0};
        const bool won = w.search_level(0);
        out.nodes_explored = nodes.load();
        if (won)
            finish_found(w.result);
        else
            out.status = w.aborted ? SearchStatus::aborted : SearchStatus::exhausted;
        return out;
    }

    enum { pending, none, has_witness, over_budget, superseded };
    std::vector<int> state(candidates.size(), pending);
    std::vector<std::vector<std::vector<long long>>> wins(candidates.size());
    const int pool = std::min<std::size_t>(want, candidates.size());
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int t = 0; t < pool; ++t) {
        threads.emplace_back([&, t] {
            for (std::size_t i = static_cast<std::size_t>(t); i < candidates.size();
                 i += static_cast<std::size_t>(pool)) {
                const int idx = static_cast<int>(i);
                if (stop_above.load(std::memory_order_relaxed) < idx) {
                    state[i] = superseded;
                    continue;
                }
                detail::EmbedWorker w{prob, nodes, opts.node_budget, stop_above, idx};
                int fresh = 0;
                while (fresh < prob.n && candidates[i][static_cast<std::size_t>(fresh)] != 0)
                    ++fresh;
                if (!w.commit(0, candidates[i], fresh)) {
                    state[i] = w.aborted ? over_budget : none;
                    continue;
                }
                state[i] = has_witness;
                wins[i] = w.result;
                int cur = stop_above.load();
                while (idx < cur && !stop_above.compare_exchange_weak(cur, idx)) {
                }
            }
        });
    }
    for (auto& th : threads) th.join();

    out.nodes_explored = nodes.load();
    bool any_abort = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (state[i] == has_witness) {
            finish_found(wins[i]);
            return out;
        }
        if (state[i] == over_budget) any_abort = true;
    }
    out.status = any_abort ? SearchStatus::aborted : SearchStatus::exhausted;
    return out;
}

}  // namespace montobs
