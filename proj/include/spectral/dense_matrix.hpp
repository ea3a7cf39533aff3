#pragma once

#include <cstddef>
#include <vector>

namespace spectral {

// Row-major dense real matrix. The universal numeric carrier for
// adjacency matrices, Laplacians, embeddings and reconstructions.
class DenseMatrix {
public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    DenseMatrix transposed() const;
    DenseMatrix multiply(const DenseMatrix& rhs) const;

    // First k columns as an n-by-k matrix.
    DenseMatrix left_columns(std::size_t k) const;

    std::vector<double> column(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<double>& v);

    // Matrix-vector product.
    std::vector<double> apply(const std::vector<double>& x) const;

    double frobenius_norm() const;
    double max_abs() const;

    DenseMatrix operator-(const DenseMatrix& rhs) const;
    DenseMatrix operator+(const DenseMatrix& rhs) const;

    bool all_finite() const;

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

// sqrt(sum (a_ij - b_ij)^2); throws ShapeMismatchError on shape disagreement.
double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b);

} // namespace spectral
