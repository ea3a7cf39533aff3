#include "spectral/dense_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "spectral/errors.hpp"

namespace spectral {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw ShapeMismatchError("data length does not match rows*cols");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw ShapeMismatchError("inner dimensions do not match");
    DenseMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

DenseMatrix DenseMatrix::left_columns(std::size_t k) const {
    if (k > cols_) throw KOutOfRangeError("k exceeds column count");
    DenseMatrix out(rows_, k);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < k; ++j)
            out(i, j) = (*this)(i, j);
    return out;
}

std::vector<double> DenseMatrix::column(std::size_t j) const {
    std::vector<double> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void DenseMatrix::set_column(std::size_t j, const std::vector<double>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

std::vector<double> DenseMatrix::apply(const std::vector<double>& x) const {
    if (x.size() != cols_)
        throw ShapeMismatchError("vector length does not match column count");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double DenseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& rhs) const {
    if (!same_shape(rhs)) throw ShapeMismatchError("shape mismatch in subtraction");
    DenseMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& rhs) const {
    if (!same_shape(rhs)) throw ShapeMismatchError("shape mismatch in addition");
    DenseMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

bool DenseMatrix::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b)) throw ShapeMismatchError("shape mismatch in frobenius_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace spectral
