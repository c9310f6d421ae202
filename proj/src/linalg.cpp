#include "chevsuper/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "chevsuper/errors.hpp"

namespace chevsuper {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix<Scalar>& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        }
        Scalar inv = m(row, col).inv();
        for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

mpz_class abs_mpz(const mpz_class& a) { return a < 0 ? mpz_class(-a) : a; }

}  // namespace

std::vector<ScalarVector> nullspace(const Matrix<Scalar>& a) {
    Matrix<Scalar> m = a;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<ScalarVector> out;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        ScalarVector v(m.cols(), Scalar(0));
        v[free] = Scalar(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t rank(const Matrix<Scalar>& a) {
    Matrix<Scalar> m = a;
    return rref(m).size();
}

std::optional<ScalarVector> solve(const Matrix<Scalar>& a, const ScalarVector& b) {
    if (b.size() != a.rows()) throw ShapeMismatch("solve: right-hand side size");
    Matrix<Scalar> aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    ScalarVector x(a.cols(), Scalar(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

Matrix<Scalar> inverse(const Matrix<Scalar>& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw ShapeMismatch("inverse of a non-square matrix");
    Matrix<Scalar> aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = Scalar(1);
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) {
        throw NotInvertible("matrix is singular");
    }
    Matrix<Scalar> out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    }
    return out;
}

IntRows hermite_rows(IntRows rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        // Euclid on column c among rows r.. until one nonzero remains.
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                if (best == rows.size() || abs_mpz(rows[i][c]) < abs_mpz(rows[best][c])) best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0) {
            for (auto& v : rows[r]) v = -v;
        }
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

SmithForm smith_form(const IntRows& input) {
    IntRows a = input;
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a.front().size();
    IntRows u(m, IntVector(m, 0));
    IntRows v(n, IntVector(n, 0));
    for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& row : a) std::swap(row[i], row[j]);
        for (auto& row : v) std::swap(row[i], row[j]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
        for (std::size_t j = 0; j < n; ++j) a[dst][j] += f * a[src][j];
        for (std::size_t j = 0; j < m; ++j) u[dst][j] += f * u[src][j];
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const mpz_class& f) {
        for (std::size_t i = 0; i < m; ++i) a[i][dst] += f * a[i][src];
        for (std::size_t i = 0; i < n; ++i) v[i][dst] += f * v[i][src];
    };

    SmithForm out;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block to (t, t).
            std::size_t bi = m;
            std::size_t bj = n;
            for (std::size_t i = t; i < m; ++i) {
                for (std::size_t j = t; j < n; ++j) {
                    if (a[i][j] == 0) continue;
                    if (bi == m || abs_mpz(a[i][j]) < abs_mpz(a[bi][bj])) {
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi == m) break;
            if (bi != t) swap_rows(bi, t);
            if (bj != t) swap_cols(bj, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                add_row(i, t, -q);
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                add_col(j, t, -q);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility: d_t must divide the rest of the block.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (a[i][j] % a[t][t] != 0) {
                        add_row(t, i, 1);
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) break;
        }
        if (a[t][t] == 0) break;
        if (a[t][t] < 0) {
            for (std::size_t j = 0; j < n; ++j) a[t][j] = -a[t][j];
            for (std::size_t j = 0; j < m; ++j) u[t][j] = -u[t][j];
        }
        out.diagonal.push_back(a[t][t]);
    }
    out.left = std::move(u);
    out.right = std::move(v);
    return out;
}

std::optional<IntVector> to_integers(const ScalarVector& v) {
    IntVector out;
    out.reserve(v.size());
    for (const auto& s : v) {
        if (s.modulus() != 0 || !s.is_integer()) return std::nullopt;
        out.push_back(s.rational().get_num());
    }
    return out;
}

RationalLattice RationalLattice::span(const std::vector<ScalarVector>& generators,
                                      std::size_t dimension) {
    RationalLattice lat;
    lat.dimension_ = dimension;
    mpz_class den = 1;
    for (const auto& g : generators) {
        if (g.size() != dimension) throw ShapeMismatch("lattice generator has wrong size");
        for (const auto& s : g) {
            mpz_class d = s.rational().get_den();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        }
    }
    IntRows rows;
    for (const auto& g : generators) {
        IntVector r;
        for (const auto& s : g) {
            mpq_class scaled = s.rational() * den;
            r.push_back(scaled.get_num());
        }
        rows.push_back(std::move(r));
    }
    lat.denominator_ = den;
    lat.hnf_ = hermite_rows(std::move(rows));
    for (const auto& r : lat.hnf_) {
        ScalarVector b;
        for (const auto& x : r) b.emplace_back(mpq_class(x, den));
        lat.basis_.push_back(std::move(b));
    }
    return lat;
}

bool RationalLattice::contains(const ScalarVector& v) const {
    if (v.size() != dimension_) throw ShapeMismatch("vector has wrong size for lattice");
    IntVector w;
    for (const auto& s : v) {
        mpq_class scaled = s.rational() * denominator_;
        if (scaled.get_den() != 1) return false;
        w.push_back(scaled.get_num());
    }
    for (const auto& row : hnf_) {
        std::size_t p = 0;
        while (row[p] == 0) ++p;
        if (w[p] % row[p] != 0) return false;
        mpz_class q = w[p] / row[p];
        for (std::size_t j = p; j < dimension_; ++j) w[j] -= q * row[j];
    }
    return std::all_of(w.begin(), w.end(), [](const mpz_class& x) { return x == 0; });
}

bool RationalLattice::contains(const RationalLattice& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [this](const ScalarVector& b) { return contains(b); });
}

}  // namespace chevsuper
