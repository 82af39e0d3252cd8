#ifndef WDCALC_MATRIX_HPP
#define WDCALC_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "scalar.hpp"

namespace wdcalc
{

/// Dense row-major matrix over a single Field.
class Matrix
{
public:
    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(field))
    {
    }

    static Matrix identity(const Field& field, std::size_t n)
    {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = Scalar::one(field);
        }
        return m;
    }

    /// Builds a matrix from explicit rows; every entry must belong to `field`.
    static Matrix from_rows(const Field& field, const std::vector<std::vector<Scalar>>& rows)
    {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        Matrix m(field, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) {
                throw invalid_input("ragged matrix: row " + std::to_string(i) + " has " + std::to_string(rows[i].size())
                                    + " entries, expected " + std::to_string(c));
            }
            for (std::size_t j = 0; j < c; ++j) {
                if (!(rows[i][j].field() == field)) {
                    throw invalid_input("matrix entry (" + std::to_string(i) + "," + std::to_string(j)
                                        + ") is not in " + field.to_string());
                }
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    /// Convenience builder from "a/b" strings.
    static Matrix parse(const Field& field, const std::vector<std::vector<std::string>>& rows)
    {
        std::vector<std::vector<Scalar>> values;
        values.reserve(rows.size());
        for (const auto& row : rows) {
            auto& out = values.emplace_back();
            for (const auto& text : row) {
                out.push_back(Scalar::parse(field, text));
            }
        }
        return from_rows(field, values);
    }

    static Matrix diagonal(const Field& field, const std::vector<Scalar>& diag)
    {
        Matrix m(field, diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m(i, i) = diag[i];
        }
        return m;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool is_zero() const
    {
        for (const auto& e : entries_) {
            if (!e.is_zero()) {
                return false;
            }
        }
        return true;
    }

    bool is_identity() const { return is_square() && *this == identity(field_, rows_); }

    Matrix transpose() const
    {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    /// Columns [first, first + count).
    Matrix column_block(std::size_t first, std::size_t count) const
    {
        Matrix out(field_, rows_, count);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < count; ++j) {
                out(i, j) = (*this)(i, first + j);
            }
        }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        check_same_shape(a, b, "+");
        Matrix out = a;
        for (std::size_t k = 0; k < out.entries_.size(); ++k) {
            out.entries_[k] += b.entries_[k];
        }
        return out;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        check_same_shape(a, b, "-");
        Matrix out = a;
        for (std::size_t k = 0; k < out.entries_.size(); ++k) {
            out.entries_[k] -= b.entries_[k];
        }
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (!(a.field_ == b.field_) || a.cols_ != b.rows_) {
            throw invalid_input("incompatible matrix product " + a.shape() + " * " + b.shape());
        }
        Matrix out(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (aik.is_zero()) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (!b(k, j).is_zero()) {
                        out(i, j) += aik * b(k, j);
                    }
                }
            }
        }
        return out;
    }

    friend Matrix operator*(const Scalar& s, const Matrix& m)
    {
        Matrix out = m;
        for (auto& e : out.entries_) {
            e = s * e;
        }
        return out;
    }

    Matrix operator-() const { return Scalar::from_int(field_, -1) * *this; }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m)
    {
        os << "[";
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i == 0 ? "[" : ", [");
            for (std::size_t j = 0; j < m.cols_; ++j) {
                os << (j == 0 ? "" : ", ") << m(i, j);
            }
            os << "]";
        }
        return os << "] over " << m.field_.to_string();
    }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b, const char* op)
    {
        if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) {
            throw invalid_input(std::string("incompatible operands for ") + op + ": " + a.shape() + " over "
                                + a.field_.to_string() + ", " + b.shape() + " over " + b.field_.to_string());
        }
    }

    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> entries_;
};

/// M^k for a square matrix and k >= 0.
inline Matrix pow(const Matrix& m, std::uint64_t k)
{
    if (!m.is_square()) {
        throw invalid_input("power of a non-square matrix");
    }
    Matrix result = Matrix::identity(m.field(), m.rows());
    Matrix base = m;
    while (k != 0) {
        if (k & 1U) {
            result = result * base;
        }
        k >>= 1U;
        if (k != 0) {
            base = base * base;
        }
    }
    return result;
}

/// Block-diagonal sum diag(a, b).
inline Matrix block_diagonal(const Matrix& a, const Matrix& b)
{
    if (!(a.field() == b.field())) {
        throw invalid_input("block sum of matrices over different fields");
    }
    Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j);
        }
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            out(a.rows() + i, a.cols() + j) = b(i, j);
        }
    }
    return out;
}

/// Reduced row echelon form by pivoted Gauss-Jordan elimination.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivot_columns;
    Scalar determinant_factor; // product of pivots times the row-swap sign (square inputs only)
};

inline Echelon row_reduce(Matrix m)
{
    const Field f = m.field();
    std::vector<std::size_t> pivots;
    Scalar det = Scalar::one(f);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col).is_zero()) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        if (pivot != row) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                std::swap(m(pivot, j), m(row, j));
            }
            det = -det;
        }
        const Scalar inv = m(row, col).inverse();
        det *= m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) {
            m(row, j) *= inv;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) {
                continue;
            }
            const Scalar factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                m(i, j) -= factor * m(row, j);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots), det};
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).pivot_columns.size(); }

inline Scalar determinant(const Matrix& m)
{
    if (!m.is_square()) {
        throw invalid_input("determinant of a non-square matrix");
    }
    auto e = row_reduce(m);
    if (e.pivot_columns.size() < m.rows()) {
        return Scalar::zero(m.field());
    }
    return e.determinant_factor;
}

inline Matrix inverse(const Matrix& m)
{
    if (!m.is_square()) {
        throw invalid_input("inverse of a non-square matrix");
    }
    const std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n + i) = Scalar::one(m.field());
    }
    auto e = row_reduce(std::move(aug));
    if (e.pivot_columns.size() < n || (n > 0 && e.pivot_columns[n - 1] >= n)) {
        throw invalid_input("matrix is singular");
    }
    return e.reduced.column_block(n, n);
}

/// Basis of the null space {x : M x = 0}, one basis vector per column.
inline Matrix kernel_basis(const Matrix& m)
{
    const auto e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_columns) {
        is_pivot[c] = true;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!is_pivot[c]) {
            free_cols.push_back(c);
        }
    }
    Matrix basis(m.field(), m.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        basis(free_cols[k], k) = Scalar::one(m.field());
        for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) {
            basis(e.pivot_columns[r], k) = -e.reduced(r, free_cols[k]);
        }
    }
    return basis;
}

/// N^n = 0 for a square N of size n.
inline bool is_nilpotent(const Matrix& m) { return m.is_square() && pow(m, m.rows()).is_zero(); }

/// (U - I)^n = 0 for a square U of size n.
inline bool is_unipotent(const Matrix& m)
{
    return m.is_square() && is_nilpotent(m - Matrix::identity(m.field(), m.rows()));
}

} // namespace wdcalc

#endif // WDCALC_MATRIX_HPP
