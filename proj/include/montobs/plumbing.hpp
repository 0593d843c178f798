#pragma once

// Plumbing trees: ordered weighted vertices, the star builder, the
// blow-down calculus, and intersection forms. Vertices carry stable ids;
// the list order is the basis order of the intersection form.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stack>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "montobs/contfrac.hpp"
#include "montobs/matrix.hpp"
#include "montobs/rational.hpp"

namespace montobs {

struct NotBlowdownable : std::domain_error {
    explicit NotBlowdownable(const std::string& what) : std::domain_error(what) {}
};

struct NotAbsorbable : std::domain_error {
    explicit NotAbsorbable(const std::string& what) : std::domain_error(what) {}
};

struct ZeroAlpha : std::domain_error {
    ZeroAlpha() : std::domain_error("tangle fraction with zero numerator") {}
};

class PlumbingGraph {
public:
    struct Vertex {
        int id;
        Int weight;
        friend bool operator==(const Vertex&, const Vertex&) = default;
    };

    PlumbingGraph() = default;

    // Vertices are listed in basis order; edges name vertex ids. The edge
    // set must form a tree over the vertices.
    PlumbingGraph(std::vector<Vertex> vertices, std::vector<std::pair<int, int>> edges)
        : vertices_(std::move(vertices)) {
        for (auto [a, b] : edges) link(a, b);
        validate();
    }

    static PlumbingGraph from_weights(const std::vector<Int>& weights,
                                      const std::vector<std::pair<int, int>>& edges) {
        std::vector<Vertex> vs;
        vs.reserve(weights.size());
        for (std::size_t i = 0; i < weights.size(); ++i)
            vs.push_back({static_cast<int>(i) + 1, weights[i]});
        return PlumbingGraph(std::move(vs), edges);
    }

    int size() const { return static_cast<int>(vertices_.size()); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }

    int position_of(int id) const {
        for (int p = 0; p < size(); ++p)
            if (vertices_[p].id == id) return p;
        throw std::out_of_range("no vertex with id " + std::to_string(id));
    }

    const Int& weight_of(int id) const { return vertices_[position_of(id)].weight; }

    bool adjacent(int a, int b) const { return edges_.count(ordered(a, b)) > 0; }

    // Neighbor ids in vertex-list order.
    std::vector<int> neighbors(int id) const {
        std::vector<int> out;
        for (const Vertex& v : vertices_)
            if (v.id != id && adjacent(id, v.id)) out.push_back(v.id);
        return out;
    }

    int valence(int id) const { return static_cast<int>(neighbors(id).size()); }

    friend bool operator==(const PlumbingGraph& a, const PlumbingGraph& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    static std::pair<int, int> ordered(int a, int b) {
        return {std::min(a, b), std::max(a, b)};
    }

    void link(int a, int b) {
        if (a == b) throw std::invalid_argument("self loop");
        if (!edges_.insert(ordered(a, b)).second)
            throw std::invalid_argument("duplicate edge");
    }

    void validate() const {
        std::set<int> ids;
        for (const Vertex& v : vertices_)
            if (!ids.insert(v.id).second) throw std::invalid_argument("duplicate vertex id");
        for (auto [a, b] : edges_)
            if (!ids.count(a) || !ids.count(b)) throw std::invalid_argument("edge names unknown vertex");
        if (vertices_.empty()) throw std::invalid_argument("empty plumbing graph");
        if (edges_.size() != ids.size() - 1) throw std::invalid_argument("edge count does not match a tree");
        // Connectivity: walk from the first vertex.
        std::set<int> seen{vertices_.front().id};
        std::stack<int> todo;
        todo.push(vertices_.front().id);
        while (!todo.empty()) {
            int cur = todo.top();
            todo.pop();
            for (auto [a, b] : edges_) {
                int other = (a == cur) ? b : (b == cur) ? a : 0;
                if (other && !seen.count(other)) {
                    seen.insert(other);
                    todo.push(other);
                }
            }
        }
        if (seen.size() != ids.size()) throw std::invalid_argument("plumbing graph is not connected");
    }

    friend PlumbingGraph blow_down(const PlumbingGraph&, int);
    friend PlumbingGraph zero_absorb(const PlumbingGraph&, int);

    std::vector<Vertex> vertices_;
    std::set<std::pair<int, int>> edges_;   // (min id, max id)
};

// Star plumbing: one central vertex of weight e, one chain per continued
// fraction. Basis order: each leg inner to outer, legs in input order,
// center last.
inline PlumbingGraph build_star_plumbing(const Int& e,
                                         const std::vector<ContinuedFraction>& legs) {
    std::vector<PlumbingGraph::Vertex> vs;
    std::vector<std::pair<int, int>> edges;
    int next_id = 1;
    std::vector<int> inner_ids;
    for (const ContinuedFraction& leg : legs) {
        int prev = 0;
        for (const Int& t : leg.terms) {
            vs.push_back({next_id, t});
            if (prev) edges.emplace_back(prev, next_id);
            else inner_ids.push_back(next_id);
            prev = next_id++;
        }
    }
    const int center = next_id;
    vs.push_back({center, e});
    for (int inner : inner_ids) edges.emplace_back(center, inner);
    return PlumbingGraph(std::move(vs), edges);
}

// Diagonal carries the weights, off-diagonal is the adjacency.
inline SymIntMatrix intersection_form(const PlumbingGraph& g) {
    const int n = g.size();
    SymIntMatrix m(n);
    std::map<int, int> pos;
    for (int p = 0; p < n; ++p) {
        pos[g.vertices()[p].id] = p;
        m.set(p, p, g.vertices()[p].weight);
    }
    for (auto [a, b] : g.edges()) m.set(pos[a], pos[b], Int(1));
    return m;
}

// Blow down a +-1 vertex of valence <= 2: neighbors gain (for -1) or lose
// (for +1) one, and the two neighbors of a valence-2 vertex become joined.
// det relation: removing a -1 flips the sign of the determinant, removing
// a +1 keeps it.
inline PlumbingGraph blow_down(const PlumbingGraph& g, int id) {
    const int p = g.position_of(id);
    const Int w = g.vertices_[p].weight;
    if (w != -1 && w != 1) throw NotBlowdownable("weight is not +-1");
    const std::vector<int> nbrs = g.neighbors(id);
    if (nbrs.size() > 2) throw NotBlowdownable("valence exceeds 2");
    if (nbrs.size() == 2 && g.adjacent(nbrs[0], nbrs[1]))
        throw NotBlowdownable("joining the neighbors would close a cycle");

    PlumbingGraph out;
    const Int delta = (w == -1) ? Int(1) : Int(-1);
    for (const auto& v : g.vertices_) {
        if (v.id == id) continue;
        bool is_nbr = std::find(nbrs.begin(), nbrs.end(), v.id) != nbrs.end();
        out.vertices_.push_back({v.id, is_nbr ? Int(v.weight + delta) : v.weight});
    }
    for (auto e : g.edges_)
        if (e.first != id && e.second != id) out.edges_.insert(e);
    if (nbrs.size() == 2)
        out.edges_.insert({std::min(nbrs[0], nbrs[1]), std::max(nbrs[0], nbrs[1])});
    return out;
}

// Absorb a 0-weight valence-2 vertex: its two neighbors merge into one
// vertex carrying the weight sum, sitting at the earlier position.
inline PlumbingGraph zero_absorb(const PlumbingGraph& g, int id) {
    const int p = g.position_of(id);
    if (g.vertices_[p].weight != 0) throw NotAbsorbable("weight is not 0");
    const std::vector<int> nbrs = g.neighbors(id);
    if (nbrs.size() != 2) throw NotAbsorbable("valence is not 2");
    int u = nbrs[0], w = nbrs[1];
    if (g.position_of(u) > g.position_of(w)) std::swap(u, w);
    if (g.adjacent(u, w)) throw NotAbsorbable("neighbors are already joined");

    PlumbingGraph out;
    const Int merged = g.weight_of(u) + g.weight_of(w);
    for (const auto& v : g.vertices_) {
        if (v.id == id || v.id == w) continue;
        out.vertices_.push_back({v.id, v.id == u ? merged : v.weight});
    }
    for (auto [a, b] : g.edges_) {
        if (a == id || b == id) continue;
        int na = (a == w) ? u : a;
        int nb = (b == w) ? u : b;
        out.edges_.insert({std::min(na, nb), std::max(na, nb)});
    }
    return out;
}

namespace detail {

enum class MoveKind { none, absorb, down_minus, down_plus };

// Move selection for reduce: zero_absorb first, then -1, then +1
// blow-downs, always at the lowest-positioned eligible vertex. Blow-downs
// inside reduce only fire at valence exactly 2: interior simplification.
// Leaves keep their weight even at +-1, matching the reduced chain shape,
// whose tail vertex is legitimately -1 when q = -1.
inline std::pair<MoveKind, int> next_move(const PlumbingGraph& g) {
    for (const auto& v : g.vertices()) {
        if (v.weight != 0 || g.valence(v.id) != 2) continue;
        auto nb = g.neighbors(v.id);
        if (!g.adjacent(nb[0], nb[1])) return {MoveKind::absorb, v.id};
    }
    for (const auto& v : g.vertices()) {
        if (v.weight != -1 || g.valence(v.id) != 2) continue;
        auto nb = g.neighbors(v.id);
        if (!g.adjacent(nb[0], nb[1])) return {MoveKind::down_minus, v.id};
    }
    for (const auto& v : g.vertices()) {
        if (v.weight != 1 || g.valence(v.id) != 2) continue;
        auto nb = g.neighbors(v.id);
        if (!g.adjacent(nb[0], nb[1])) return {MoveKind::down_plus, v.id};
    }
    return {MoveKind::none, 0};
}

}  // namespace detail

// All intermediate states of reduce, starting graph included. Each move
// strictly decreases the vertex count, so this terminates.
inline std::vector<PlumbingGraph> reduce_steps(const PlumbingGraph& g) {
    std::vector<PlumbingGraph> steps{g};
    for (;;) {
        auto [kind, id] = detail::next_move(steps.back());
        if (kind == detail::MoveKind::none) return steps;
        if (kind == detail::MoveKind::absorb)
            steps.push_back(zero_absorb(steps.back(), id));
        else
            steps.push_back(blow_down(steps.back(), id));
    }
}

inline PlumbingGraph reduce(const PlumbingGraph& g) { return reduce_steps(g).back(); }

// e + sum of beta/alpha over the tangle fractions alpha/beta.
inline Rational neumann_raymond(const Int& e, const std::vector<Rational>& tangles) {
    Rational acc{e};
    for (const Rational& t : tangles) {
        if (t.sign() == 0) throw ZeroAlpha();
        acc = acc + t.reciprocal();
    }
    return acc;
}

// Determinant of the intersection form, computed along the tree: for a
// root v with children c, det(subtree v) =
//   w_v * prod det(c) - sum_c det(c minus its root) * prod of the others.
// Linear in the vertex count, exact, and equal to det_exact of the form.
inline Int tree_det(const PlumbingGraph& g) {
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : g.edges()) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    const int root = g.vertices().front().id;
    // Iterative post-order; P = subtree det, D = det with subtree root removed.
    std::map<int, Int> P, D;
    std::stack<std::pair<int, int>> todo;   // (vertex, parent)
    std::stack<std::pair<int, int>> order;
    todo.push({root, 0});
    while (!todo.empty()) {
        auto [v, parent] = todo.top();
        todo.pop();
        order.push({v, parent});
        for (int nb : adj[v])
            if (nb != parent) todo.push({nb, v});
    }
    while (!order.empty()) {
        auto [v, parent] = order.top();
        order.pop();
        Int prod(1);
        for (int c : adj[v])
            if (c != parent) prod *= P[c];
        Int acc = g.weight_of(v) * prod;
        for (int c : adj[v]) {
            if (c == parent) continue;
            Int others(1);
            for (int c2 : adj[v])
                if (c2 != parent && c2 != c) others *= P[c2];
            acc -= D[c] * others;
        }
        P[v] = acc;
        Int dprod(1);
        for (int c : adj[v])
            if (c != parent) dprod *= P[c];
        D[v] = dprod;
    }
    return P[root];
}

// Canonical encoding of the underlying weighted tree, independent of
// vertex order and ids: two graphs are isomorphic as weighted trees iff
// their encodings match. Rooted at the tree center (both choices tried
// when the center is an edge), children sorted by encoding.
inline std::string canonical_form(const PlumbingGraph& g) {
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : g.edges()) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> ids;
    for (const auto& v : g.vertices()) ids.push_back(v.id);

    // Peel leaves to locate the 1- or 2-vertex center.
    std::map<int, int> degree;
    for (int id : ids) degree[id] = static_cast<int>(adj[id].size());
    std::vector<int> layer;
    std::set<int> alive(ids.begin(), ids.end());
    for (int id : ids)
        if (degree[id] <= 1) layer.push_back(id);
    while (alive.size() > 2) {
        std::vector<int> next;
        for (int id : layer) {
            alive.erase(id);
            for (int nb : adj[id]) {
                if (!alive.count(nb)) continue;
                if (--degree[nb] == 1) next.push_back(nb);
            }
        }
        layer = std::move(next);
    }

    std::function<std::string(int, int)> enc = [&](int v, int parent) -> std::string {
        std::vector<std::string> kids;
        for (int nb : adj[v])
            if (nb != parent) kids.push_back(enc(nb, v));
        std::sort(kids.begin(), kids.end());
        std::string s = "(" + g.weight_of(v).get_str();
        for (const auto& k : kids) s += k;
        return s + ")";
    };

    std::string best;
    for (int c : alive) {
        std::string s = enc(c, 0);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

// Graphviz dump. Node names follow the basis order, f1 through fn.
inline std::string to_dot(const PlumbingGraph& g) {
    std::map<int, int> index;
    for (int p = 0; p < g.size(); ++p) index[g.vertices()[p].id] = p + 1;
    std::ostringstream os;
    os << "graph plumbing {\n";
    for (int p = 0; p < g.size(); ++p) {
        const auto& v = g.vertices()[p];
        os << "  f" << (p + 1) << " [label=\"f" << (p + 1) << " ("
           << v.weight.get_str() << ")\"];\n";
    }
    std::vector<std::pair<int, int>> by_pos;
    for (auto [a, b] : g.edges()) {
        int pa = index[a], pb = index[b];
        by_pos.emplace_back(std::min(pa, pb), std::max(pa, pb));
    }
    std::sort(by_pos.begin(), by_pos.end());
    for (auto [a, b] : by_pos) os << "  f" << a << " -- f" << b << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace montobs
