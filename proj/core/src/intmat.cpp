#include "b32/intmat.hpp"

#include <algorithm>
#include <sstream>

#include "b32/util.hpp"

namespace b32 {

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::from(const std::vector<std::vector<long>>& rows) {
    IntMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        check(rows[i].size() == m.cols(), "IntMat::from ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::mul(const IntMat& o) const {
    check(cols_ == o.rows_, "IntMat::mul shape mismatch");
    IntMat r(rows_, o.cols_);
    mpz_class tmp;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                tmp = aik * o.at(k, j);
                r.at(i, j) += tmp;
            }
        }
    return r;
}

IntMat IntMat::kronecker(const IntMat& o) const {
    IntMat r(rows_ * o.rows_, cols_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            if (at(i, j) == 0) continue;
            for (std::size_t k = 0; k < o.rows_; ++k)
                for (std::size_t l = 0; l < o.cols_; ++l)
                    r.at(i * o.rows_ + k, j * o.cols_ + l) = at(i, j) * o.at(k, l);
        }
    return r;
}

bool IntMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

bool IntMat::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

mpz_class IntMat::trace() const {
    mpz_class t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
}

void IntMat::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

std::string IntMat::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "\n[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
        os << "]";
    }
    return os.str();
}

namespace {

// Row HNF by integer elimination.  Pivot selection by least nonzero
// absolute value keeps entries moderate at our sizes; no modular tricks
// needed.
void hnf_in_place(IntMat& m, IntMat* u) {
    std::size_t nr = m.rows(), nc = m.cols();
    if (u) *u = IntMat::identity(nr);
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        // reduce column below `row` to a single nonzero entry
        while (true) {
            std::size_t piv = nr;
            for (std::size_t i = row; i < nr; ++i)
                if (m.at(i, col) != 0 && (piv == nr || mpz_cmpabs(m.at(i, col).get_mpz_t(), m.at(piv, col).get_mpz_t()) < 0))
                    piv = i;
            if (piv == nr) break;  // column already zero
            m.swap_rows(row, piv);
            if (u) u->swap_rows(row, piv);
            bool again = false;
            for (std::size_t i = row + 1; i < nr; ++i) {
                if (m.at(i, col) == 0) continue;
                mpz_class q = m.at(i, col) / m.at(row, col);  // truncated ok, iterate
                if (q != 0) {
                    for (std::size_t j = 0; j < nc; ++j) m.at(i, j) -= q * m.at(row, j);
                    if (u)
                        for (std::size_t j = 0; j < nr; ++j) u->at(i, j) -= q * u->at(row, j);
                }
                if (m.at(i, col) != 0) again = true;
            }
            if (!again) break;
        }
        if (m.at(row, col) == 0) continue;
        if (m.at(row, col) < 0) {
            for (std::size_t j = 0; j < nc; ++j) m.at(row, j) = -m.at(row, j);
            if (u)
                for (std::size_t j = 0; j < nr; ++j) u->at(row, j) = -u->at(row, j);
        }
        // reduce entries above the pivot
        for (std::size_t i = 0; i < row; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), m.at(i, col).get_mpz_t(), m.at(row, col).get_mpz_t());
            if (q != 0) {
                for (std::size_t j = 0; j < nc; ++j) m.at(i, j) -= q * m.at(row, j);
                if (u)
                    for (std::size_t j = 0; j < nr; ++j) u->at(i, j) -= q * u->at(row, j);
            }
        }
        ++row;
    }
}

}  // namespace

IntMat hnf_rows(const IntMat& a, IntMat* transform) {
    IntMat m = a;
    hnf_in_place(m, transform);
    return m;
}

IntMat left_kernel_basis(const IntMat& a) {
    // U * A = H; rows of U matching zero rows of H form a kernel basis,
    // and it is saturated because U is unimodular.
    IntMat u;
    IntMat h = hnf_rows(a, &u);
    std::vector<std::size_t> zero_rows;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool z = true;
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) { z = false; break; }
        if (z) zero_rows.push_back(i);
    }
    IntMat k(zero_rows.size(), a.rows());
    for (std::size_t i = 0; i < zero_rows.size(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) k.at(i, j) = u.at(zero_rows[i], j);
    // canonical: HNF the kernel basis itself
    return hnf_rows(k);
}

std::vector<mpz_class> elementary_divisors(IntMat a) {
    std::size_t nr = a.rows(), nc = a.cols();
    std::vector<mpz_class> divs;
    std::size_t off = 0;
    while (off < nr && off < nc) {
        // find smallest nonzero entry in the remaining block
        std::size_t pi = nr, pj = nc;
        for (std::size_t i = off; i < nr; ++i)
            for (std::size_t j = off; j < nc; ++j)
                if (a.at(i, j) != 0 &&
                    (pi == nr || mpz_cmpabs(a.at(i, j).get_mpz_t(), a.at(pi, pj).get_mpz_t()) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi == nr) break;  // all zero
        a.swap_rows(off, pi);
        for (std::size_t i = 0; i < nr; ++i) std::swap(a.at(i, off), a.at(i, pj));
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = off + 1; i < nr; ++i) {
                if (a.at(i, off) == 0) continue;
                mpz_class q = a.at(i, off) / a.at(off, off);
                for (std::size_t j = off; j < nc; ++j) a.at(i, j) -= q * a.at(off, j);
                if (a.at(i, off) != 0) {
                    a.swap_rows(off, i);
                    clean = false;
                }
            }
            for (std::size_t j = off + 1; j < nc; ++j) {
                if (a.at(off, j) == 0) continue;
                mpz_class q = a.at(off, j) / a.at(off, off);
                for (std::size_t i = off; i < nr; ++i) a.at(i, j) -= q * a.at(i, off);
                if (a.at(off, j) != 0) {
                    for (std::size_t i = off; i < nr; ++i) std::swap(a.at(i, off), a.at(i, j));
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility fix: pivot must divide every remaining entry
            for (std::size_t i = off + 1; i < nr && clean; ++i)
                for (std::size_t j = off + 1; j < nc && clean; ++j)
                    if (a.at(i, j) % a.at(off, off) != 0) {
                        for (std::size_t c = off; c < nc; ++c) a.at(off, c) += a.at(i, c);
                        clean = false;
                    }
        }
        divs.push_back(abs(a.at(off, off)));
        ++off;
    }
    return divs;
}

mpz_class det(IntMat a) {
    check(a.rows() == a.cols(), "det: square required");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && a.at(s, k) == 0) ++s;
            if (s == n) return 0;
            a.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : mpz_class(-a.at(n - 1, n - 1));
}

bool is_positive_definite(const IntMat& a) {
    if (!a.is_symmetric()) return false;
    std::size_t n = a.rows();
    IntMat m = a;
    // leading principal minors via Bareiss; minor_k = pivot after step k
    mpz_class prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m.at(k, k) <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m.at(k, k);
    }
    return true;
}

bool solve_left_integer(const IntMat& a, const std::vector<mpz_class>& b, std::vector<mpz_class>& x) {
    // x * A = b  <=>  A^T x^T = b^T; use HNF of A rows: U A = H, seek y H = b
    // with back-substitution, then x = y U.
    IntMat u;
    IntMat h = hnf_rows(a, &u);
    std::size_t nr = h.rows(), nc = h.cols();
    check(b.size() == nc, "solve_left_integer: size mismatch");
    std::vector<mpz_class> y(nr, 0), rem = b;
    // pivot columns of H
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        if (h.at(r, c) == 0) continue;
        mpz_class q, rr;
        mpz_fdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), rem[c].get_mpz_t(), h.at(r, c).get_mpz_t());
        if (rr != 0) return false;
        y[r] = q;
        if (q != 0)
            for (std::size_t j = c; j < nc; ++j) rem[j] -= q * h.at(r, j);
        ++r;
    }
    for (std::size_t j = 0; j < nc; ++j)
        if (rem[j] != 0) return false;
    x.assign(a.rows(), 0);
    for (std::size_t i = 0; i < nr; ++i) {
        if (y[i] == 0) continue;
        for (std::size_t j = 0; j < a.rows(); ++j) x[j] += y[i] * u.at(i, j);
    }
    return true;
}

bool solve_right_rational(const IntMat& a, const std::vector<mpz_class>& b,
                          std::vector<mpz_class>& x, mpz_class& d) {
    // Rational Gaussian elimination on [A | b].
    std::size_t nr = a.rows(), nc = a.cols();
    check(b.size() == nr, "solve_right_rational: size mismatch");
    std::vector<std::vector<mpq_class>> m(nr, std::vector<mpq_class>(nc + 1));
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) m[i][j] = a.at(i, j);
        m[i][nc] = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t piv = row;
        while (piv < nr && m[piv][col] == 0) ++piv;
        if (piv == nr) continue;
        std::swap(m[row], m[piv]);
        mpq_class inv = m[row][col];
        for (std::size_t j = col; j <= nc; ++j) m[row][j] /= inv;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == row || m[i][col] == 0) continue;
            mpq_class f = m[i][col];
            for (std::size_t j = col; j <= nc; ++j) m[i][j] -= f * m[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < nr; ++i)
        if (m[i][nc] != 0) return false;
    std::vector<mpq_class> sol(nc, 0);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) sol[pivot_col[i]] = m[i][nc];
    d = 1;
    for (auto& q : sol) d = lcm(d, mpz_class(q.get_den()));
    x.assign(nc, 0);
    for (std::size_t j = 0; j < nc; ++j) {
        mpq_class scaled = sol[j] * mpq_class(d);
        check(scaled.get_den() == 1, "solve_right_rational: denominator bug");
        x[j] = scaled.get_num();
    }
    return true;
}

std::size_t rank(IntMat a) {
    IntMat h = hnf_rows(a);
    std::size_t r = 0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) { ++r; break; }
    return r;
}

}  // namespace b32
