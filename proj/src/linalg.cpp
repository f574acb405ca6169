#include "pverify/linalg.hpp"

namespace pverify {

std::vector<std::size_t> reduce(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != row)
            for (std::size_t c = 0; c < m.cols(); ++c)
                std::swap(m.at(pivot, c), m.at(row, c));
        GaussianRational inv = m.at(row, col).inverse();
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            GaussianRational factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) -= factor * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return reduce(m).size(); }

std::vector<std::vector<GaussianRational>> nullspace(const QMatrix& m) {
    QMatrix r = m;
    std::vector<std::size_t> pivots = reduce(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<GaussianRational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<GaussianRational> v(m.cols());
        v[free] = GaussianRational(1);
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -r.at(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<GaussianRational>> solve(const QMatrix& a,
                                                   const std::vector<GaussianRational>& b) {
    QMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    std::vector<std::size_t> pivots = reduce(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;

    std::vector<GaussianRational> x(a.cols());
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(k, a.cols());
    return x;
}

}  // namespace pverify
