#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pverify/gaussian_rational.hpp"

namespace pverify {

// Dense matrix over the Gaussian rationals.  All algorithms are exact.
class QMatrix {
  public:
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GaussianRational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const GaussianRational& at(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<GaussianRational> data_;
};

// Gauss-Jordan reduction to reduced row echelon form, in place.
// Returns the pivot columns in increasing order; rank = pivot count.
std::vector<std::size_t> reduce(QMatrix& m);

std::size_t rank(QMatrix m);

// Basis of { x : m x = 0 }; one vector per non-pivot column.
std::vector<std::vector<GaussianRational>> nullspace(const QMatrix& m);

// Exact solution of a x = b with every non-pivot unknown set to zero, which
// makes the answer the leftmost-supported solution under the column order.
// Returns nullopt when the system is inconsistent.
std::optional<std::vector<GaussianRational>> solve(const QMatrix& a,
                                                   const std::vector<GaussianRational>& b);

}  // namespace pverify
