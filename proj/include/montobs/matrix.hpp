#pragma once

// Dense symmetric matrices over exact integers, with fraction-free
// determinants, exact inertia, and a Sylvester definiteness test.
// Nothing here rounds: entries are arbitrary-precision throughout.

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "montobs/rational.hpp"

namespace montobs {

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

template <typename T>
class SymMatrix {
public:
    SymMatrix() : n_(0) {}
    explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, T(0)) {
        if (n < 0) throw DimensionMismatch("negative matrix order");
    }

    static SymMatrix from_rows(const std::vector<std::vector<T>>& rows) {
        SymMatrix m(static_cast<int>(rows.size()));
        for (int i = 0; i < m.n_; ++i) {
            if (static_cast<int>(rows[i].size()) != m.n_)
                throw DimensionMismatch("matrix is not square");
            for (int j = 0; j < m.n_; ++j) m.a_[idx(m.n_, i, j)] = rows[i][j];
        }
        for (int i = 0; i < m.n_; ++i)
            for (int j = i + 1; j < m.n_; ++j)
                if (m(i, j) != m(j, i))
                    throw std::invalid_argument("matrix is not symmetric");
        return m;
    }

    int order() const { return n_; }

    const T& operator()(int i, int j) const { return a_[idx(n_, i, j)]; }

    // Writes keep M == M^T by construction.
    void set(int i, int j, const T& v) {
        a_[idx(n_, i, j)] = v;
        a_[idx(n_, j, i)] = v;
    }

    friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
        return a.n_ == b.n_ && a.a_ == b.a_;
    }

private:
    static std::size_t idx(int n, int i, int j) {
        return static_cast<std::size_t>(i) * n + j;
    }
    int n_;
    std::vector<T> a_;
};

using SymIntMatrix = SymMatrix<Int>;

struct Inertia {
    int n_plus = 0;
    int n_minus = 0;
    int n_zero = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

// Bareiss one-step fraction-free elimination; every division is exact.
// Row swaps only change the sign of the result.
template <typename T>
T det_exact(const SymMatrix<T>& m) {
    const int n = m.order();
    if (n == 0) return T(1);
    std::vector<std::vector<T>> w(n, std::vector<T>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[i][j] = m(i, j);

    T prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w[k][k] == 0) {
            int r = k + 1;
            while (r < n && w[r][k] == 0) ++r;
            if (r == n) return T(0);
            std::swap(w[k], w[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
        prev = w[k][k];
    }
    T d = w[n - 1][n - 1];
    return sign < 0 ? T(-d) : d;
}

// Exact inertia by symmetric elimination over rationals. A zero diagonal
// with a live off-diagonal entry is handled by the symmetric 2x2 block
// step, which contributes one +1 and one -1 (the block has determinant
// -b^2 < 0). Congruence transformations preserve inertia.
template <typename T>
Inertia signature_exact(const SymMatrix<T>& m) {
    const int n = m.order();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));

    auto swap_sym = [&](int i, int j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    };

    Inertia out;
    int k = 0;
    while (k < n) {
        if (a[k][k].sign() == 0) {
            int d = k + 1;
            while (d < n && a[d][d].sign() == 0) ++d;
            if (d < n) {
                swap_sym(k, d);
            } else {
                int c = k + 1;
                while (c < n && a[k][c].sign() == 0) ++c;
                if (c == n) {   // row k is dead: a zero direction
                    ++out.n_zero;
                    ++k;
                    continue;
                }
                swap_sym(c, k + 1);
                const Rational b = a[k][k + 1];
                const Rational dd = a[k + 1][k + 1];
                const Rational det = -(b * b);
                for (int i = k + 2; i < n; ++i) {
                    const Rational u = a[i][k];
                    const Rational v = a[i][k + 1];
                    for (int j = i; j < n; ++j) {
                        const Rational uj = a[j][k];
                        const Rational vj = a[j][k + 1];
                        const Rational corr = (dd * u * uj - b * (u * vj + v * uj)) / det;
                        a[i][j] = a[i][j] - corr;
                        a[j][i] = a[i][j];
                    }
                }
                ++out.n_plus;
                ++out.n_minus;
                k += 2;
                continue;
            }
        }
        const Rational p = a[k][k];
        if (p.sign() > 0) ++out.n_plus; else ++out.n_minus;
        for (int i = k + 1; i < n; ++i) {
            if (a[i][k].sign() == 0) continue;
            const Rational f = a[i][k] / p;
            for (int j = i; j < n; ++j) {
                a[i][j] = a[i][j] - f * a[k][j];
                a[j][i] = a[i][j];
            }
        }
        ++k;
    }
    return out;
}

// Sylvester: M is negative definite iff (-1)^k det(leading k x k) > 0 for
// every k. The Bareiss pivot after step k equals the (k+1)-st leading
// principal minor, so one pass with no row swaps decides it; a zero pivot
// is a zero leading minor, which already refutes definiteness.
template <typename T>
bool is_negative_definite(const SymMatrix<T>& m) {
    const int n = m.order();
    if (n == 0) return true;
    std::vector<std::vector<T>> w(n, std::vector<T>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[i][j] = m(i, j);

    T prev(1);
    for (int k = 0; k < n; ++k) {
        const T& pivot = w[k][k];
        const bool want_negative = (k % 2 == 0);
        if (pivot == 0) return false;
        if (want_negative ? pivot > 0 : pivot < 0) return false;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
        prev = w[k][k];
    }
    return true;
}

// File format: first line is the order n, then n rows of n integers.
inline SymIntMatrix read_matrix(std::istream& in) {
    long long n = 0;
    if (!(in >> n) || n < 0) throw std::invalid_argument("bad matrix header");
    std::vector<std::vector<Int>> rows(n, std::vector<Int>(n));
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            std::string tok;
            if (!(in >> tok)) throw std::invalid_argument("truncated matrix");
            rows[i][j] = Int(tok);
        }
    return SymIntMatrix::from_rows(rows);
}

inline void write_matrix(std::ostream& out, const SymIntMatrix& m) {
    out << m.order() << "\n";
    for (int i = 0; i < m.order(); ++i) {
        for (int j = 0; j < m.order(); ++j) {
            if (j) out << ' ';
            out << m(i, j).get_str();
        }
        out << "\n";
    }
}

}  // namespace montobs
