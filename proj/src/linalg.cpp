#include "reebmin/linalg.hpp"

#include <utility>

namespace reebmin::linalg {

RatMatrix rref(const RatMatrix& a, std::vector<std::size_t>* pivots) {
    RatMatrix m = a;
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        Rat inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rat f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    if (pivots) *pivots = std::move(piv);
    return m;
}

std::size_t rank(const RatMatrix& a) {
    std::vector<std::size_t> piv;
    rref(a, &piv);
    return piv.size();
}

std::size_t rank(const std::vector<RatVec>& rows, std::size_t dim) {
    if (rows.empty()) return 0;
    return rank(RatMatrix::from_rows(rows, dim));
}

std::vector<RatVec> nullspace(const RatMatrix& a) {
    std::vector<std::size_t> piv;
    RatMatrix r = rref(a, &piv);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : piv) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVec v(a.cols(), Rat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, free);
        basis.push_back(primitive(v));
    }
    return basis;
}

Rat determinant(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
    RatMatrix m = a;
    const std::size_t n = m.rows();
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m(sel, col) == 0) ++sel;
        if (sel == n) return Rat(0);
        if (sel != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col) == 0) continue;
            Rat f = m(i, col) / m(col, col);
            for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
        }
    }
    return det;
}

Int determinant(const IntMatrix& a) { return mp::numerator(determinant(to_rat(a))); }

std::optional<RatVec> solve(const RatMatrix& a, const RatVec& b) {
    if (b.size() != a.rows()) throw Error(ErrorCode::InvalidArgument, "solve: dimension mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    RatMatrix r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    RatVec x(a.cols(), Rat(0));
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r(i, a.cols());
    return x;
}

RatMatrix inverse(const RatMatrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw Error(ErrorCode::InvalidArgument, "inverse of a non-square matrix");
    RatMatrix aug(n, 2 * n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    RatMatrix r = rref(aug, &piv);
    if (piv.size() < n || piv[n - 1] != n - 1) throw Error(ErrorCode::RankDeficient, "matrix is singular");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
    return inv;
}

}  // namespace reebmin::linalg
