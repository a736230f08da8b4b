#pragma once

// Exact rational linear algebra: dense matrices, canonical row echelon forms,
// subspaces of a fixed coordinate space and quotient bookkeeping.
//
// Vectors are row vectors throughout. A linear map f: Q^m -> Q^n is stored as
// an m x n matrix M whose i-th row is f(e_i), so f(v) = v * M.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ssq {

/// Arbitrary precision rational, always canonical (lowest terms, positive
/// denominator, zero is 0/1).
using Rational = mpq_class;
using Vector = std::vector<Rational>;

std::string to_string(const Rational& q);

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    /// Every row must have exactly `cols` entries.
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    /// Bounds-checked access.
    Rational& at(std::size_t i, std::size_t j);
    const Rational& at(std::size_t i, std::size_t j) const;

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Rational> row(std::size_t i) const;
    std::span<Rational> row(std::size_t i);
    Vector row_vector(std::size_t i) const;

    Matrix transpose() const;
    /// Half-open row range [row_begin, row_end) and column range [col_begin, col_end).
    Matrix submatrix(std::size_t row_begin, std::size_t row_end, std::size_t col_begin,
                     std::size_t col_end) const;
    bool is_zero() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// v * M for a row vector v.
Vector multiply(std::span<const Rational> v, const Matrix& m);
bool is_zero(std::span<const Rational> v);

struct RowEchelon {
    Matrix matrix;                   // nonzero rows only
    std::vector<std::size_t> pivots; // pivot column of each row, increasing
};

/// Unique reduced row echelon form; zero rows are dropped.
RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Solves A x = b for a column vector x. Returns nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& a, std::span<const Rational> b);

/// A subspace of Q^n held as the canonical RREF of a basis. Two subspaces of the
/// same ambient space are equal iff their basis matrices are identical.
class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim = 0);

    static Subspace full(std::size_t ambient_dim);
    static Subspace span(const Matrix& rows);
    static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
    /// Span of the unit vectors e_i for i in `coords`.
    static Subspace coordinate(std::size_t ambient_dim, std::span<const std::size_t> coords);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Residual of v after clearing every pivot coordinate with basis rows.
    Vector reduce(std::span<const Rational> v) const;
    bool contains(std::span<const Rational> v) const;
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b);

private:
    Subspace(std::size_t ambient, RowEchelon echelon);

    std::size_t ambient_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

/// { x : m x = 0 } as a subspace of Q^{m.cols()}.
Subspace kernel_basis(const Matrix& m);
/// { x : x m = 0 } as a subspace of Q^{m.rows()}.
Subspace left_kernel(const Matrix& m);
/// Row space of v * m for v ranging over `s`.
Subspace image(const Subspace& s, const Matrix& m);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

/// The quotient big/small with a canonical set of representatives.
///
/// Representatives are the RREF of big's basis after clearing small's pivot
/// coordinates. They are vectors of `big` whose classes form a basis of the
/// quotient, and each is zero on every pivot column of `small`.
class Quotient {
public:
    Quotient(const Subspace& big, const Subspace& small);

    std::size_t dimension() const { return reps_.rows(); }
    const Matrix& representatives() const { return reps_; }
    const std::vector<std::size_t>& representative_pivots() const { return rep_pivots_; }
    const Subspace& numerator() const { return big_; }
    const Subspace& denominator() const { return small_; }

    /// Coordinates of the class of v in the representative basis.
    /// Throws std::invalid_argument if v is not in the numerator.
    Vector coordinates(std::span<const Rational> v) const;

private:
    Subspace big_;
    Subspace small_;
    Matrix reps_;
    std::vector<std::size_t> rep_pivots_;
};

/// Throws std::invalid_argument unless small is contained in big.
Quotient quotient_data(const Subspace& big, const Subspace& small);

/// Row-sparse matrix, used for maps between large graded pieces that are
/// block diagonal after a permutation.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void set(std::size_t i, std::size_t j, const Rational& value);
    Rational get(std::size_t i, std::size_t j) const;
    const std::map<std::size_t, Rational>& row(std::size_t i) const { return rows_data_[i]; }

    bool is_zero() const;
    std::size_t nonzeros() const;
    std::size_t rank() const;
    Matrix to_dense() const;
    Vector apply(std::span<const Rational> v) const; // v * M

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::map<std::size_t, Rational>> rows_data_;
};

} // namespace ssq
