#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wlax/series.hpp"

namespace wlax {

/// Rectangular matrix whose entries are truncated series (LaurentSeries or
/// pseudodifferential symbols). Entry products keep operand order, so the
/// coefficient algebra may be noncommutative.
template <class Entry>
class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(std::size_t rows, std::size_t cols, int trunc = kDefaultTrunc)
        : rows_(rows), cols_(cols), data_(rows * cols, Entry(trunc))
    {
    }

    static SeriesMatrix identity(std::size_t n, int trunc = kDefaultTrunc)
    {
        SeriesMatrix m(n, n, trunc);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = Entry::constant(typename Entry::coeff_type(Scalar(1)), trunc);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Entry& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Entry& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    SeriesMatrix block(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const
    {
        SeriesMatrix b(rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j)
                b(i, j) = (*this)(rs[i], cs[j]);
        return b;
    }

    SeriesMatrix& operator+=(const SeriesMatrix& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }
    SeriesMatrix& operator-=(const SeriesMatrix& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }
    friend SeriesMatrix operator+(SeriesMatrix a, const SeriesMatrix& b) { return a += b; }
    friend SeriesMatrix operator-(SeriesMatrix a, const SeriesMatrix& b) { return a -= b; }

    friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw InvalidArgument("series matrix shape mismatch in product");
        SeriesMatrix r(a.rows_, b.cols_, std::min(a.min_trunc(), b.min_trunc()));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Entry& x = a(i, k);
                if (x.exact_zero())
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).exact_zero())
                        r(i, j) += x * b(k, j);
            }
        return r;
    }

    SeriesMatrix truncated(int order) const
    {
        SeriesMatrix r = *this;
        for (auto& e : r.data_)
            e = e.truncated(order);
        return r;
    }

    /// Lowest power at which every entry is exact (kExact if all exact).
    int precision() const
    {
        int p = kExact;
        for (const auto& e : data_)
            p = std::max(p, e.prec());
        return p;
    }
    int min_trunc() const
    {
        int t = 0;
        for (const auto& e : data_)
            t = std::min(t, e.trunc());
        return data_.empty() ? kDefaultTrunc : t;
    }

    friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Two-sided inverse by Gauss-Jordan elimination with left row
    /// operations. Pivots must have a nonzero scalar leading coefficient.
    SeriesMatrix inverse(int floor) const
    {
        if (rows_ != cols_)
            throw InvalidArgument("only square series matrices can be inverted");
        const std::size_t n = rows_;
        SeriesMatrix a = *this, b = identity(n, floor);
        for (auto& e : a.data_)
            e = e.with_trunc(std::min(e.trunc(), floor));
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t best = n;
            int best_rank = -1;
            int best_top = 0;
            for (std::size_t r = c; r < n; ++r) {
                auto lead = a(r, c).unit_leading();
                if (!lead)
                    continue;
                // Prefer pivots with an exact inverse (single exact term),
                // then the highest leading power.
                int rank = a(r, c).exact() && a(r, c).terms().size() == 1 ? 1 : 0;
                if (rank > best_rank || (rank == best_rank && lead->first > best_top)) {
                    best = r;
                    best_rank = rank;
                    best_top = lead->first;
                }
            }
            if (best == n)
                throw ComputationError("series matrix not invertible: no pivot with a unit leading coefficient in column " +
                                       std::to_string(c));
            if (best != c)
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a(best, j), a(c, j));
                    std::swap(b(best, j), b(c, j));
                }
            Entry pinv = a(c, c).inverse(floor);
            for (std::size_t j = 0; j < n; ++j) {
                a(c, j) = pinv * a(c, j);
                b(c, j) = pinv * b(c, j);
            }
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || a(r, c).exact_zero())
                    continue;
                Entry factor = a(r, c);
                for (std::size_t j = 0; j < n; ++j) {
                    a(r, j) -= factor * a(c, j);
                    b(r, j) -= factor * b(c, j);
                }
            }
        }
        return b;
    }

private:
    void check_same(const SeriesMatrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw InvalidArgument("series matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Entry> data_;
};

enum class QuasidetRoute { explicit_formula, definition };

/// Complement of `sel` in {0, ..., n-1}, in increasing order.
inline std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& sel)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(sel.begin(), sel.end(), i) == sel.end())
            out.push_back(i);
    return out;
}

/// |M|_{U,W} = (id_W M^{-1} id_U)^{-1}; U and W select coordinate
/// subspaces. The result has rows indexed by U and columns by W.
template <class Entry>
SeriesMatrix<Entry> quasideterminant(const SeriesMatrix<Entry>& m, const std::vector<std::size_t>& u,
                                     const std::vector<std::size_t>& w, int floor)
{
    if (u.size() != w.size())
        throw InvalidArgument("quasideterminant needs dim U = dim W");
    SeriesMatrix<Entry> inv = m.inverse(floor);
    return inv.block(w, u).inverse(floor);
}

/// id_U M id_W - id_U M id_W' (id_U' M id_W')^{-1} id_U' M id_W.
template <class Entry>
SeriesMatrix<Entry> quasidet_explicit(const SeriesMatrix<Entry>& m, const std::vector<std::size_t>& u,
                                      const std::vector<std::size_t>& w, int floor)
{
    if (u.size() != w.size() || m.rows() != m.cols())
        throw InvalidArgument("quasideterminant needs a square matrix and dim U = dim W");
    auto up = complement(m.rows(), u), wp = complement(m.cols(), w);
    SeriesMatrix<Entry> result = m.block(u, w);
    if (up.empty())
        return result;
    SeriesMatrix<Entry> inner = m.block(up, wp).inverse(floor);
    return result - m.block(u, wp) * inner * m.block(up, w);
}

/// Re-runs `compute(floor)` with deeper working floors until the result is
/// exact down to `target`, then truncates at `target`.
template <class F>
auto with_precision(int target, F compute, int max_slack = 64)
{
    for (int slack = 2;; slack *= 2) {
        try {
            auto result = compute(target - slack);
            if (result.precision() <= target)
                return result.truncated(target);
        } catch (const ComputationError&) {
            // A pivot may only become visible at a deeper working floor.
            if (slack >= max_slack)
                throw;
        }
        if (slack >= max_slack)
            throw ComputationError("truncation budget exhausted: cannot reach order " + std::to_string(target));
    }
}

} // namespace wlax
