#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "reebmin/error.hpp"

namespace reebmin {

namespace mp = boost::multiprecision;

using Int = mp::mpz_int;
using Rat = mp::mpq_rational;
// Runtime-precision binary float. Expression templates are off so the type
// composes with Eigen and with `auto`.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;
using RealVec = std::vector<Real>;

/// Dense row-major matrix used for the exact (Int/Rat) and floating (Real) kernels.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols_if_empty = 0) {
        Matrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_cols(const std::vector<std::vector<T>>& cols, std::size_t rows_if_empty = 0) {
        return from_rows(cols, rows_if_empty).transpose();
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix product shape mismatch");
        Matrix c(a.rows_, b.cols_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
        if (a.cols_ != x.size()) throw Error(ErrorCode::InvalidArgument, "matrix-vector shape mismatch");
        std::vector<T> y(a.rows_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
        return y;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using RealMatrix = Matrix<Real>;

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "dot: dimension mismatch");
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Real dot(const RatVec& a, const RealVec& b);

bool is_zero(const RatVec& v);

/// Positive multiple of `v` with coprime integer entries. The zero vector maps to itself.
RatVec primitive(const RatVec& v);
IntVec primitive_int(const RatVec& v);

RatVec to_rat(const IntVec& v);
IntVec to_int(const RatVec& v);  // throws unless every entry is integral
RatMatrix to_rat(const IntMatrix& m);
IntMatrix to_int(const RatMatrix& m);

Real to_real(const Rat& q);
RealVec to_real(const RatVec& v);
/// Exact rational value of a binary float.
Rat to_rat(const Real& x);

/// Parses "p/q", "p", or a plain/scientific decimal such as "-0.125" or "1e-9" exactly.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);
/// Fixed `digits` significant digits, scientific when needed ("%.{digits}g").
std::string format_real(const Real& x, int digits = 12);

/// Continued-fraction best approximation of x with denominator <= max_den.
Rat rationalize(const Real& x, const Int& max_den);

Real real_max_norm(const RealVec& v);
Real real_norm2(const RealVec& v);

unsigned bits_to_digits10(unsigned bits);

/// Sets the thread's default Real precision for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned bits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned previous_digits_;
};

unsigned current_precision_bits();

}  // namespace reebmin
