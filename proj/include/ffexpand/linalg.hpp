#pragma once

#include <cstddef>
#include <vector>

#include "ffexpand/gf.hpp"

namespace ffx {

/// Dense row-major matrix over F_q.
class MatrixGF {
public:
    MatrixGF(FieldPtr field, std::size_t rows, std::size_t cols);
    MatrixGF(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Raw> entries);

    static MatrixGF identity(FieldPtr field, std::size_t n);

    const FieldCtx& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Raw& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    Raw at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    const std::vector<Raw>& entries() const noexcept { return entries_; }

    /// M * v.
    std::vector<Raw> apply(const std::vector<Raw>& v) const;

    friend bool operator==(const MatrixGF& a, const MatrixGF& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    FieldPtr field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Raw> entries_;
};

struct RrefResult {
    MatrixGF reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank() const noexcept { return pivots.size(); }
};

/// Reduced row echelon form. Pivots are the first nonzero entry found scanning
/// columns left to right, so the result is deterministic.
RrefResult rref(MatrixGF m);

std::size_t rank(const MatrixGF& m);

/// Basis of the right null space, one vector per free column in increasing
/// column order. The vector for free column f has a 1 at f and is supported on
/// f and the pivot columns left of f.
std::vector<std::vector<Raw>> kernel(const MatrixGF& m);

}  // namespace ffx
