#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mrlbm {

/// Small dense row-major matrix. Sized for moment matrices (q <= 16) and the
/// weight-derivation systems; not a general linear-algebra type.
class DenseMatrix {
  public:
    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows)
        , cols_(cols)
        , a_(rows * cols, 0.0)
    {
    }

    static DenseMatrix identity(std::size_t n)
    {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
        {
            m(i, i) = 1.0;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const double* row(std::size_t i) const { return a_.data() + i * cols_; }

    void multiply(const double* x, double* y) const
    {
        for (std::size_t i = 0; i < rows_; ++i)
        {
            double acc = 0.0;
            const double* r = row(i);
            for (std::size_t j = 0; j < cols_; ++j)
            {
                acc += r[j] * x[j];
            }
            y[i] = acc;
        }
    }

    /// Gauss-Jordan inverse with partial pivoting. Throws on (near-)singular
    /// input; moment matrices are well conditioned so no refinement is done.
    DenseMatrix inverse() const
    {
        if (rows_ != cols_)
        {
            throw std::invalid_argument("DenseMatrix::inverse: not square");
        }
        const std::size_t n = rows_;
        DenseMatrix a(*this);
        DenseMatrix inv = identity(n);
        for (std::size_t col = 0; col < n; ++col)
        {
            std::size_t piv = col;
            double best = std::abs(a(col, col));
            for (std::size_t r = col + 1; r < n; ++r)
            {
                if (std::abs(a(r, col)) > best)
                {
                    best = std::abs(a(r, col));
                    piv = r;
                }
            }
            if (best == 0.0)
            {
                throw std::domain_error("DenseMatrix::inverse: singular matrix");
            }
            if (piv != col)
            {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            const double d = 1.0 / a(col, col);
            for (std::size_t j = 0; j < n; ++j)
            {
                a(col, j) *= d;
                inv(col, j) *= d;
            }
            for (std::size_t r = 0; r < n; ++r)
            {
                if (r == col)
                {
                    continue;
                }
                const double f = a(r, col);
                if (f == 0.0)
                {
                    continue;
                }
                for (std::size_t j = 0; j < n; ++j)
                {
                    a(r, j) -= f * a(col, j);
                    inv(r, j) -= f * inv(col, j);
                }
            }
        }
        return inv;
    }

  private:
    void swap_rows(std::size_t i, std::size_t j)
    {
        for (std::size_t c = 0; c < cols_; ++c)
        {
            std::swap(a_[i * cols_ + c], a_[j * cols_ + c]);
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

} // namespace mrlbm
