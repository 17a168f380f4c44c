#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wlax/scalar.hpp"

namespace wlax {

/// Dense matrix over the rationals. Small sizes only (N <= a few dozen).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    /// E_ij with 0-based indices.
    static Matrix unit(std::size_t n, std::size_t i, std::size_t j);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const Scalar& c);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Scalar& c) { return a *= c; }
    friend Matrix operator*(const Scalar& c, Matrix a) { return a *= c; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator-(Matrix a);
    friend bool operator==(const Matrix& a, const Matrix& b);

    Matrix transpose() const;
    Scalar trace() const;
    bool is_zero() const;
    bool is_diagonal() const;

    /// Exact inverse; nullopt when singular.
    std::optional<Matrix> inverse() const;
    std::size_t rank() const;
    /// Basis of the right kernel, as columns of the returned matrix.
    Matrix nullspace() const;

    /// Kronecker product a (x) b, row index (i, h) -> i * b.rows() + h.
    static Matrix kron(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

} // namespace wlax
