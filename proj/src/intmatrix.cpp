#include "atyp/intmatrix.hpp"

#include <algorithm>

#include "atyp/error.hpp"

namespace atyp {

IntegerMatrix IntegerMatrix::identity(int n) {
    IntegerMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    IntegerMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw precondition_error("ragged row list for integer matrix");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

std::vector<Int> IntegerMatrix::row(int r) const {
    std::vector<Int> out(cols_);
    for (int j = 0; j < cols_; ++j) out[j] = at(r, j);
    return out;
}

IntegerMatrix IntegerMatrix::transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw precondition_error("matrix product shape mismatch");
    IntegerMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) {
                if (rhs.at(k, j) != 0) out.at(i, j) += a * rhs.at(k, j);
            }
        }
    return out;
}

void IntegerMatrix::swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntegerMatrix::negate_row(int r) {
    for (int j = 0; j < cols_; ++j) at(r, j) = -at(r, j);
}

void IntegerMatrix::add_row_multiple(int a, int b, const Int& k) {
    if (k == 0) return;
    for (int j = 0; j < cols_; ++j) at(a, j) += k * at(b, j);
}

bool IntegerMatrix::is_zero() const {
    for (const Int& x : data_)
        if (x != 0) return false;
    return true;
}

std::string IntegerMatrix::to_string() const {
    std::string out = "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) out += ",";
        out += "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) out += ",";
            out += at(i, j).get_str();
        }
        out += "]";
    }
    out += "]";
    return out;
}

namespace {

// Combine rows a and b of m (and the tracker) with the unimodular 2x2
// transform sending entries (p, q) in column col to (gcd, 0).
void gcd_rows(IntegerMatrix& m, IntegerMatrix& u, int a, int b, int col) {
    const Int p = m.at(a, col);
    const Int q = m.at(b, col);
    if (q == 0) return;
    if (p == 0) {
        m.swap_rows(a, b);
        u.swap_rows(a, b);
        return;
    }
    if (q % p == 0) {
        // exact multiple: plain elimination, row a untouched (termination of
        // the Smith iteration depends on this case not mixing rows)
        const Int k = -(q / p);
        m.add_row_multiple(b, a, k);
        u.add_row_multiple(b, a, k);
        return;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    const Int pg = p / g;
    const Int qg = q / g;
    for (IntegerMatrix* mat : {&m, &u}) {
        for (int j = 0; j < mat->cols(); ++j) {
            Int x = mat->at(a, j);
            Int y = mat->at(b, j);
            mat->at(a, j) = s * x + t * y;
            mat->at(b, j) = -qg * x + pg * y;
        }
    }
}

}  // namespace

HnfResult hermite_normal_form(const IntegerMatrix& m) {
    HnfResult res;
    res.h = m;
    res.u = IntegerMatrix::identity(m.rows());
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int r = row; r < m.rows(); ++r) {
            if (res.h.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        res.h.swap_rows(row, pivot);
        res.u.swap_rows(row, pivot);
        for (int r = row + 1; r < m.rows(); ++r) gcd_rows(res.h, res.u, row, r, col);
        if (res.h.at(row, col) < 0) {
            res.h.negate_row(row);
            res.u.negate_row(row);
        }
        const Int& p = res.h.at(row, col);
        for (int r = 0; r < row; ++r) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), res.h.at(r, col).get_mpz_t(), p.get_mpz_t());
            res.h.add_row_multiple(r, row, -q);
            res.u.add_row_multiple(r, row, -q);
        }
        ++row;
    }
    res.rank = row;
    return res;
}

SnfResult smith_normal_form(const IntegerMatrix& m) {
    SnfResult res;
    res.d = m;
    res.u = IntegerMatrix::identity(m.rows());
    res.v = IntegerMatrix::identity(m.cols());
    IntegerMatrix& d = res.d;

    auto gcd_cols = [&](int a, int b, int row) {
        IntegerMatrix dt = d.transpose();
        IntegerMatrix vt = res.v.transpose();
        gcd_rows(dt, vt, a, b, row);
        d = dt.transpose();
        res.v = vt.transpose();
    };

    int t = 0;
    const int limit = std::min(m.rows(), m.cols());
    while (t < limit) {
        // find a nonzero entry in the trailing submatrix
        int pr = -1, pc = -1;
        for (int i = t; i < m.rows() && pr < 0; ++i)
            for (int j = t; j < m.cols(); ++j)
                if (d.at(i, j) != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
        if (pr < 0) break;
        d.swap_rows(t, pr);
        res.u.swap_rows(t, pr);
        {
            IntegerMatrix dt = d.transpose();
            IntegerMatrix vt = res.v.transpose();
            dt.swap_rows(t, pc);
            vt.swap_rows(t, pc);
            d = dt.transpose();
            res.v = vt.transpose();
        }
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int r = t + 1; r < m.rows(); ++r)
                if (d.at(r, t) != 0) gcd_rows(d, res.u, t, r, t);
            for (int c = t + 1; c < m.cols(); ++c)
                if (d.at(t, c) != 0) gcd_cols(t, c, t);
            for (int r = t + 1; r < m.rows(); ++r)
                if (d.at(r, t) != 0) dirty = true;
        }
        // enforce divisibility of the remaining block by d(t,t)
        bool redo = false;
        for (int i = t + 1; i < m.rows() && !redo; ++i)
            for (int j = t + 1; j < m.cols(); ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    d.add_row_multiple(t, i, 1);
                    res.u.add_row_multiple(t, i, 1);
                    redo = true;
                    break;
                }
        if (redo) continue;
        if (d.at(t, t) < 0) {
            d.negate_row(t);
            res.u.negate_row(t);
        }
        ++t;
    }
    res.rank = 0;
    for (int i = 0; i < limit; ++i)
        if (d.at(i, i) != 0) ++res.rank;
    return res;
}

IntegerMatrix right_kernel(const IntegerMatrix& m) {
    SnfResult snf = smith_normal_form(m);
    const int n = m.cols();
    const int r = snf.rank;
    IntegerMatrix out(n - r, n);
    for (int k = 0; k < n - r; ++k)
        for (int i = 0; i < n; ++i) out.at(k, i) = snf.v.at(i, r + k);
    return out;
}

std::optional<std::vector<Int>> solve_integer(const IntegerMatrix& m, const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw precondition_error("solve shape mismatch");
    SnfResult snf = smith_normal_form(m);
    std::vector<Int> c(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) c[i] += snf.u.at(i, j) * b[j];
    std::vector<Int> y(m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        const Int di = i < std::min(m.rows(), m.cols()) ? snf.d.at(i, i) : Int(0);
        if (di == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % di != 0) return std::nullopt;
            y[i] = c[i] / di;
        }
    }
    std::vector<Int> x(m.cols());
    for (int i = 0; i < m.cols(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (y[j] != 0) x[i] += snf.v.at(i, j) * y[j];
    return x;
}

std::optional<std::vector<Rational>> solve_rational(const IntegerMatrix& m,
                                                    const std::vector<Rational>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw precondition_error("solve shape mismatch");
    SnfResult snf = smith_normal_form(m);
    std::vector<Rational> c(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j)
            if (snf.u.at(i, j) != 0) c[i] += Rational(snf.u.at(i, j)) * b[j];
    std::vector<Rational> y(m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        const Int di = i < std::min(m.rows(), m.cols()) ? snf.d.at(i, i) : Int(0);
        if (di == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            y[i] = c[i] / Rational(di);
        }
    }
    std::vector<Rational> x(m.cols());
    for (int i = 0; i < m.cols(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (y[j] != 0) x[i] += Rational(snf.v.at(i, j)) * y[j];
    return x;
}

IntegerMatrix right_inverse_saturated(const IntegerMatrix& m) {
    IntegerMatrix a(m.cols(), m.rows());
    for (int col = 0; col < m.rows(); ++col) {
        std::vector<Int> e(m.rows());
        e[col] = 1;
        auto x = solve_integer(m, e);
        if (!x) throw precondition_error("right inverse requires a saturated full-rank row lattice");
        for (int i = 0; i < m.cols(); ++i) a.at(i, col) = (*x)[i];
    }
    return a;
}

}  // namespace atyp
