#include "picardkit/int_matrix.hpp"

#include <algorithm>

namespace picardkit {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const IntVec& entries) {
    IntMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVec>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) fail(ErrorCode::Internal, "column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
    }
    return m;
}

IntVec IntMatrix::column(std::size_t c) const {
    IntVec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

IntVec IntMatrix::row(std::size_t r) const {
    IntVec v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
    if (cols_ != other.rows_) fail(ErrorCode::Internal, "matrix product shape mismatch");
    IntMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) out.at(i, j) += x * other.at(k, j);
        }
    return out;
}

IntVec IntMatrix::apply(const IntVec& v) const {
    if (v.size() != cols_) fail(ErrorCode::Internal, "matrix-vector shape mismatch");
    IntVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] += at(i, j) * v[j];
    return out;
}

IntMatrix IntMatrix::hstack(const IntMatrix& other) const {
    if (rows_ != other.rows_) fail(ErrorCode::Internal, "hstack shape mismatch");
    IntMatrix out(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) out.at(i, cols_ + j) = other.at(i, j);
    }
    return out;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix out(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(idx[i], j);
    return out;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
    IntMatrix out(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) out.at(i, j) = at(i, idx[j]);
    return out;
}

bool IntMatrix::is_zero() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) return false;
    return true;
}

namespace {

// Elementary operations applied simultaneously to the work matrix and the
// accumulated transform.  The inverse transform receives the inverse
// operation on the opposite side, keeping u * uinv = I exact throughout.

void row_swap(IntMatrix& m, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
}

void col_swap(IntMatrix& m, std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, i), m.at(r, j));
}

// row i += q * row j
void row_add(IntMatrix& m, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(i, c) += q * m.at(j, c);
}

// col i += q * col j
void col_add(IntMatrix& m, std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, i) += q * m.at(r, j);
}

void row_negate(IntMatrix& m, std::size_t i) {
    for (std::size_t c = 0; c < m.cols(); ++c) m.at(i, c) = -m.at(i, c);
}

void col_negate(IntMatrix& m, std::size_t i) {
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, i) = -m.at(r, i);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    SnfResult res;
    res.u = IntMatrix::identity(rows);
    res.uinv = IntMatrix::identity(rows);
    res.v = IntMatrix::identity(cols);
    res.vinv = IntMatrix::identity(cols);
    res.d = a;
    IntMatrix& d = res.d;

    const std::size_t nmin = std::min(rows, cols);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        row_swap(d, i, j);
        row_swap(res.u, i, j);
        col_swap(res.uinv, i, j);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        col_swap(d, i, j);
        col_swap(res.v, i, j);
        row_swap(res.vinv, i, j);
    };
    auto add_row = [&](std::size_t i, std::size_t j, const Int& q) {  // row i += q row j
        row_add(d, i, j, q);
        row_add(res.u, i, j, q);
        col_add(res.uinv, j, i, -q);
    };
    auto add_col = [&](std::size_t i, std::size_t j, const Int& q) {  // col i += q col j
        col_add(d, i, j, q);
        col_add(res.v, i, j, q);
        row_add(res.vinv, j, i, -q);
    };
    auto negate_row = [&](std::size_t i) {
        row_negate(d, i);
        row_negate(res.u, i);
        col_negate(res.uinv, i);
    };

    for (std::size_t t = 0; t < nmin; ++t) {
        for (;;) {
            // Smallest nonzero |entry| in the trailing submatrix becomes the pivot.
            bool found = false;
            std::size_t pr = t, pc = t;
            Int best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (d.at(i, j) == 0) continue;
                    Int v = abs(d.at(i, j));
                    if (!found || v < best) {
                        found = true;
                        best = v;
                        pr = i;
                        pc = j;
                    }
                }
            if (!found) break;  // trailing submatrix is zero
            swap_rows(t, pr);
            swap_cols(t, pc);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(), d.at(t, t).get_mpz_t());
                add_row(i, t, -q);
                if (d.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(), d.at(t, t).get_mpz_t());
                add_col(j, t, -q);
                if (d.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot is lone in its row and column; enforce divisibility of the
            // remaining submatrix before moving on.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < rows && divides_all; ++i)
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        add_row(t, i, 1);
                        divides_all = false;
                        break;
                    }
                }
            if (divides_all) break;
        }
        if (d.at(t, t) < 0) negate_row(t);
        if (d.at(t, t) == 0) break;  // everything past here is zero
        ++res.rank;
    }
    return res;
}

IntMatrix kernel_lattice(const IntMatrix& a) {
    SnfResult snf = smith_normal_form(a);
    std::vector<std::size_t> free_cols;
    for (std::size_t j = snf.rank; j < a.cols(); ++j) free_cols.push_back(j);
    return snf.v.select_cols(free_cols);
}

std::optional<IntVec> solve_linear(const IntMatrix& a, const IntVec& b) {
    if (b.size() != a.rows()) fail(ErrorCode::Internal, "solve_linear shape mismatch");
    SnfResult snf = smith_normal_form(a);
    IntVec c = snf.u.apply(b);
    IntVec w(a.cols());
    const std::size_t nmin = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < nmin && snf.d.at(i, i) != 0) {
            if (c[i] % snf.d.at(i, i) != 0) return std::nullopt;
            w[i] = c[i] / snf.d.at(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return snf.v.apply(w);
}

}  // namespace picardkit
