#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "picardkit/error.hpp"

namespace picardkit {

// All integer arithmetic in the library is exact and arbitrary precision.
using Int = mpz_class;
using IntVec = std::vector<Int>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix diagonal(const IntVec& entries);
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    IntVec column(std::size_t c) const;
    IntVec row(std::size_t r) const;

    IntMatrix mul(const IntMatrix& other) const;
    IntVec apply(const IntVec& v) const;
    IntMatrix hstack(const IntMatrix& other) const;
    IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
    IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
    bool is_zero() const;

    bool operator==(const IntMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    IntVec a_;
};

// Smith normal form: u * input * v = d with u, v unimodular, d diagonal,
// diagonal entries nonnegative and d[i] | d[i+1].  uinv and vinv are the
// exact inverses, maintained alongside.
struct SnfResult {
    IntMatrix u, uinv, d, v, vinv;
    std::size_t rank = 0;  // number of nonzero diagonal entries
};

SnfResult smith_normal_form(const IntMatrix& a);

// Columns form a basis of the integer kernel lattice {x : a x = 0}.
IntMatrix kernel_lattice(const IntMatrix& a);

// An integer solution of a x = b, if one exists.
std::optional<IntVec> solve_linear(const IntMatrix& a, const IntVec& b);

}  // namespace picardkit
