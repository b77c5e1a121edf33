#pragma once

// Dense exact-rational matrices and the incremental elimination basis shared
// by minimization, learning, and minimal-polynomial computation.

#include "cyc/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyc {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n)
    {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static RationalMatrix from_rows(const std::vector<RationalVector>& rows)
    {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        RationalMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalVector row(std::size_t i) const
    {
        return RationalVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    RationalVector col(std::size_t j) const
    {
        RationalVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    RationalMatrix transposed() const
    {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (sgn(x) != 0)
                return false;
        return true;
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        RationalMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (sgn(aik) == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (sgn(b(k, j)) != 0)
                        c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix sum shape mismatch");
        RationalMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i)
            c.data_[i] += b.data_[i];
        return c;
    }

    friend RationalMatrix operator*(const Rational& s, const RationalMatrix& a)
    {
        RationalMatrix c = a;
        for (auto& x : c.data_)
            x *= s;
        return c;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    RationalVector data_;
};

/// Row vector times matrix.
inline RationalVector mul(const RationalVector& u, const RationalMatrix& m)
{
    if (u.size() != m.rows())
        throw std::invalid_argument("vector-matrix shape mismatch");
    RationalVector out(m.cols());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (sgn(u[i]) == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0)
                out[j] += u[i] * m(i, j);
    }
    return out;
}

/// Matrix times column vector.
inline RationalVector mul(const RationalMatrix& m, const RationalVector& u)
{
    if (u.size() != m.cols())
        throw std::invalid_argument("matrix-vector shape mismatch");
    RationalVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0 && sgn(u[j]) != 0)
                out[i] += m(i, j) * u[j];
    return out;
}

inline Rational dot(const RationalVector& a, const RationalVector& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot product shape mismatch");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

inline bool is_zero(const RationalVector& v)
{
    for (const auto& x : v)
        if (sgn(x) != 0)
            return false;
    return true;
}

/// Incrementally built basis of a subspace of Q^dim. Every stored echelon row
/// remembers how it combines the originally inserted vectors, so membership
/// queries return coordinates relative to the insertion order.
class RowBasis {
public:
    explicit RowBasis(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return rows_.size(); }

    /// Coordinates of x in terms of the inserted vectors, or nullopt if x is
    /// outside the span.
    std::optional<RationalVector> coordinates(const RationalVector& x) const
    {
        auto [residual, combo] = reduce(x);
        if (!is_zero(residual))
            return std::nullopt;
        return combo;
    }

    bool contains(const RationalVector& x) const { return is_zero(reduce(x).first); }

    /// Inserts x if it is independent of the current span. Returns true if added.
    bool insert(const RationalVector& x)
    {
        auto [residual, combo] = reduce(x);
        std::size_t pivot = 0;
        while (pivot < dim_ && sgn(residual[pivot]) == 0)
            ++pivot;
        if (pivot == dim_)
            return false;
        // residual = x - sum combo_k * orig_k
        for (auto& c : combo)
            c = -c;
        combo.push_back(1);
        Rational inv = 1 / residual[pivot];
        for (auto& r : residual)
            r *= inv;
        for (auto& c : combo)
            c *= inv;
        rows_.push_back({std::move(residual), std::move(combo), pivot});
        return true;
    }

private:
    struct EchelonRow {
        RationalVector vec;   // vec[pivot] == 1, zero at earlier pivots
        RationalVector combo; // vec == sum combo[k] * inserted[k]
        std::size_t pivot;
    };

    std::pair<RationalVector, RationalVector> reduce(const RationalVector& x) const
    {
        if (x.size() != dim_)
            throw std::invalid_argument("basis dimension mismatch");
        RationalVector residual = x;
        RationalVector combo(rows_.size());
        for (const auto& row : rows_) {
            if (sgn(residual[row.pivot]) == 0)
                continue;
            Rational f = residual[row.pivot];
            for (std::size_t j = row.pivot; j < dim_; ++j)
                if (sgn(row.vec[j]) != 0)
                    residual[j] -= f * row.vec[j];
            for (std::size_t k = 0; k < row.combo.size(); ++k)
                if (sgn(row.combo[k]) != 0)
                    combo[k] += f * row.combo[k];
        }
        return {std::move(residual), std::move(combo)};
    }

    std::size_t dim_;
    std::vector<EchelonRow> rows_;
};

inline std::size_t rank(const RationalMatrix& m)
{
    RowBasis b(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        b.insert(m.row(i));
    return b.size();
}

struct SingularSystem : std::runtime_error {
    RationalMatrix matrix;
    SingularSystem(const std::string& what, RationalMatrix m) : std::runtime_error(what), matrix(std::move(m)) {}
};

/// Solves a * x = b for square nonsingular a. Throws SingularSystem carrying a.
inline RationalVector solve(const RationalMatrix& a, const RationalVector& b)
{
    if (!a.square() || a.rows() != b.size())
        throw std::invalid_argument("solve: shape mismatch");
    const std::size_t n = a.rows();
    RationalMatrix m(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = a(i, j);
        m(i, n) = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0)
            ++p;
        if (p == n)
            throw SingularSystem("singular linear system", a);
        if (p != c)
            for (std::size_t j = 0; j <= n; ++j)
                std::swap(m(p, j), m(c, j));
        Rational inv = 1 / m(c, c);
        for (std::size_t j = c; j <= n; ++j)
            m(c, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(m(i, c)) == 0)
                continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j <= n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = m(i, n);
    return x;
}

} // namespace cyc
