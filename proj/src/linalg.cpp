#include "ffexpand/linalg.hpp"

#include <utility>

namespace ffx {

MatrixGF::MatrixGF(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

MatrixGF::MatrixGF(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Raw> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw InvalidArgument("matrix entry count does not match its shape");
    for (Raw v : entries_) {
        if (v >= field_->order()) throw InvalidArgument("matrix entry outside the field");
    }
}

MatrixGF MatrixGF::identity(FieldPtr field, std::size_t n) {
    MatrixGF m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<Raw> MatrixGF::apply(const std::vector<Raw>& v) const {
    if (v.size() != cols_) throw InvalidArgument("vector length does not match column count");
    const FieldCtx& f = *field_;
    std::vector<Raw> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        Raw acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc = f.add(acc, f.mul(at(r, c), v[c]));
        out[r] = acc;
    }
    return out;
}

RrefResult rref(MatrixGF m) {
    const FieldCtx& f = m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m.at(sel, col) == 0) ++sel;
        if (sel == rows) continue;
        if (sel != row) {
            for (std::size_t c = col; c < cols; ++c) std::swap(m.at(sel, c), m.at(row, c));
        }
        const Raw inv = f.inv(m.at(row, col));
        for (std::size_t c = col; c < cols; ++c) m.at(row, c) = f.mul(m.at(row, c), inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row) continue;
            const Raw factor = m.at(r, col);
            if (factor == 0) continue;
            const Raw neg = f.neg(factor);
            for (std::size_t c = col; c < cols; ++c) {
                const Raw v = m.at(row, c);
                if (v != 0) m.at(r, c) = f.add(m.at(r, c), f.mul(neg, v));
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const MatrixGF& m) { return rref(m).rank(); }

std::vector<std::vector<Raw>> kernel(const MatrixGF& m) {
    const FieldCtx& f = m.field();
    const RrefResult r = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : r.pivots) is_pivot[p] = true;

    std::vector<std::vector<Raw>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Raw> v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) {
            v[r.pivots[i]] = f.neg(r.reduced.at(i, free));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace ffx
