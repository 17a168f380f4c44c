#include "wlax/matrix.hpp"

#include <utility>

namespace wlax {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::unit(std::size_t n, std::size_t i, std::size_t j)
{
    Matrix m(n, n);
    m(i, j) = 1;
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw InvalidArgument("matrix shape mismatch in +");
    for (std::size_t k = 0; k < data_.size(); ++k)
        data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw InvalidArgument("matrix shape mismatch in -");
    for (std::size_t k = 0; k < data_.size(); ++k)
        data_[k] -= o.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(const Scalar& c)
{
    for (auto& x : data_)
        x *= c;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_)
        throw InvalidArgument("matrix shape mismatch in *");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (b(k, j) != 0)
                    r(i, j) += x * b(k, j);
        }
    return r;
}

Matrix operator-(Matrix a)
{
    for (auto& x : a.data_)
        x = -x;
    return a;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

Scalar Matrix::trace() const
{
    Scalar t = 0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i)
        t += (*this)(i, i);
    return t;
}

bool Matrix::is_zero() const
{
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

bool Matrix::is_diagonal() const
{
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && (*this)(i, j) != 0)
                return false;
    return true;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        Scalar inv = 1 / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            Scalar f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

std::optional<Matrix> Matrix::inverse() const
{
    if (rows_ != cols_)
        return std::nullopt;
    std::size_t n = rows_;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = (*this)(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1)
        return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

std::size_t Matrix::rank() const
{
    Matrix m = *this;
    return rref(m).size();
}

Matrix Matrix::nullspace() const
{
    Matrix m = *this;
    auto piv = rref(m);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv)
        is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c])
            free.push_back(c);
    Matrix basis(cols_, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            basis(piv[r], k) = -m(r, free[k]);
    }
    return basis;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b)
{
    Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) {
            if (a(i, j) == 0)
                continue;
            for (std::size_t h = 0; h < b.rows_; ++h)
                for (std::size_t k = 0; k < b.cols_; ++k)
                    r(i * b.rows_ + h, j * b.cols_ + k) = a(i, j) * b(h, k);
        }
    return r;
}

} // namespace wlax
