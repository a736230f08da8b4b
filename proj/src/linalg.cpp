#include "ssq/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ssq {

std::string to_string(const Rational& q) { return q.get_str(); }

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("Matrix::from_rows: ragged row");
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
}

Rational& Matrix::at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_)
        throw std::out_of_range("Matrix::at: index out of range");
    return (*this)(i, j);
}

const Rational& Matrix::at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
        throw std::out_of_range("Matrix::at: index out of range");
    return (*this)(i, j);
}

std::span<const Rational> Matrix::row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
}

std::span<Rational> Matrix::row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

Vector Matrix::row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::submatrix(std::size_t row_begin, std::size_t row_end, std::size_t col_begin,
                         std::size_t col_end) const {
    if (row_begin > row_end || row_end > rows_ || col_begin > col_end || col_end > cols_)
        throw std::out_of_range("Matrix::submatrix: range out of bounds");
    Matrix s(row_end - row_begin, col_end - col_begin);
    for (std::size_t i = row_begin; i < row_end; ++i)
        for (std::size_t j = col_begin; j < col_end; ++j)
            s(i - row_begin, j - col_begin) = (*this)(i, j);
    return s;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("Matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (sgn(x) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0)
                    c(i, j) += x * b(k, j);
        }
    return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Vector multiply(std::span<const Rational> v, const Matrix& m) {
    if (v.size() != m.rows())
        throw std::invalid_argument("multiply: dimension mismatch");
    Vector out(m.cols());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0)
            continue;
        auto r = m.row(i);
        for (std::size_t j = 0; j < r.size(); ++j)
            if (sgn(r[j]) != 0)
                out[j] += v[i] * r[j];
    }
    return out;
}

bool is_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

namespace {

// In-place Gauss-Jordan elimination over a vector of rows. Returns pivot columns;
// rows past pivots.size() are zero afterwards.
std::vector<std::size_t> eliminate(std::vector<Vector>& rows, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t c = 0; c < cols && next < rows.size(); ++c) {
        std::size_t p = next;
        while (p < rows.size() && sgn(rows[p][c]) == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[next]);
        Vector& pr = rows[next];
        if (pr[c] != 1) {
            Rational inv = 1 / pr[c];
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(pr[j]) != 0)
                    pr[j] *= inv;
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == next || sgn(rows[i][c]) == 0)
                continue;
            Rational f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(pr[j]) != 0)
                    rows[i][j] -= f * pr[j];
        }
        pivots.push_back(c);
        ++next;
    }
    return pivots;
}

std::vector<Vector> to_rows(const Matrix& m) {
    std::vector<Vector> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!is_zero(m.row(i)))
            rows.push_back(m.row_vector(i));
    return rows;
}

RowEchelon echelon_of_rows(std::vector<Vector> rows, std::size_t cols) {
    auto pivots = eliminate(rows, cols);
    rows.resize(pivots.size());
    return {Matrix::from_rows(rows, cols), std::move(pivots)};
}

} // namespace

RowEchelon rref(const Matrix& m) { return echelon_of_rows(to_rows(m), m.cols()); }

std::size_t rank(const Matrix& m) {
    auto rows = to_rows(m);
    return eliminate(rows, m.cols()).size();
}

std::optional<Vector> solve(const Matrix& a, std::span<const Rational> b) {
    if (b.size() != a.rows())
        throw std::invalid_argument("solve: dimension mismatch");
    const std::size_t n = a.cols();
    std::vector<Vector> rows(a.rows(), Vector(n + 1));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::copy(a.row(i).begin(), a.row(i).end(), rows[i].begin());
        rows[i][n] = b[i];
    }
    auto pivots = eliminate(rows, n + 1);
    Vector x(n);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        if (pivots[k] == n)
            return std::nullopt;
        x[pivots[k]] = rows[k][n];
    }
    return x;
}

Subspace::Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

Subspace::Subspace(std::size_t ambient, RowEchelon echelon)
    : ambient_(ambient), basis_(std::move(echelon.matrix)), pivots_(std::move(echelon.pivots)) {}

Subspace Subspace::full(std::size_t ambient_dim) {
    std::vector<std::size_t> pivots(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i)
        pivots[i] = i;
    return Subspace(ambient_dim, RowEchelon{Matrix::identity(ambient_dim), std::move(pivots)});
}

Subspace Subspace::span(const Matrix& rows) { return Subspace(rows.cols(), rref(rows)); }

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
    std::vector<Vector> rows;
    for (const auto& v : vectors) {
        if (v.size() != ambient_dim)
            throw std::invalid_argument("Subspace::span: vector has wrong length");
        if (!is_zero(v))
            rows.push_back(v);
    }
    return Subspace(ambient_dim, echelon_of_rows(std::move(rows), ambient_dim));
}

Subspace Subspace::coordinate(std::size_t ambient_dim, std::span<const std::size_t> coords) {
    std::vector<std::size_t> sorted(coords.begin(), coords.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Matrix basis(sorted.size(), ambient_dim);
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (sorted[k] >= ambient_dim)
            throw std::out_of_range("Subspace::coordinate: coordinate out of range");
        basis(k, sorted[k]) = 1;
    }
    return Subspace(ambient_dim, RowEchelon{std::move(basis), std::move(sorted)});
}

Vector Subspace::reduce(std::span<const Rational> v) const {
    if (v.size() != ambient_)
        throw std::invalid_argument("Subspace::reduce: vector has wrong length");
    Vector r(v.begin(), v.end());
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
        const std::size_t c = pivots_[k];
        if (sgn(r[c]) == 0)
            continue;
        Rational f = r[c];
        auto b = basis_.row(k);
        for (std::size_t j = c; j < ambient_; ++j)
            if (sgn(b[j]) != 0)
                r[j] -= f * b[j];
    }
    return r;
}

bool Subspace::contains(std::span<const Rational> v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_)
        throw std::invalid_argument("Subspace::contains: ambient dimension mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i)))
            return false;
    return true;
}

bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

Subspace kernel_basis(const Matrix& m) {
    const std::size_t n = m.cols();
    auto e = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    std::vector<Vector> vectors;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        Vector v(n);
        v[f] = 1;
        for (std::size_t k = 0; k < e.pivots.size(); ++k)
            v[e.pivots[k]] = -e.matrix(k, f);
        vectors.push_back(std::move(v));
    }
    return Subspace::span(n, vectors);
}

Subspace left_kernel(const Matrix& m) { return kernel_basis(m.transpose()); }

Subspace image(const Subspace& s, const Matrix& m) {
    if (s.ambient_dim() != m.rows())
        throw std::invalid_argument("image: dimension mismatch");
    return Subspace::span(s.basis() * m);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("subspace_sum: ambient dimension mismatch");
    std::vector<Vector> rows;
    rows.reserve(a.dim() + b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        rows.push_back(a.basis().row_vector(i));
    for (std::size_t i = 0; i < b.dim(); ++i)
        rows.push_back(b.basis().row_vector(i));
    return Subspace::span(a.ambient_dim(), rows);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("subspace_intersect: ambient dimension mismatch");
    const std::size_t n = a.ambient_dim();
    if (a.dim() == 0 || b.dim() == 0)
        return Subspace(n);
    if (a.dim() == n)
        return b;
    if (b.dim() == n)
        return a;
    // x A = y B  <=>  (x, y) [A; -B] = 0; the intersection is spanned by x A.
    Matrix stacked(a.dim() + b.dim(), n);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            stacked(i, j) = a.basis()(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            stacked(a.dim() + i, j) = -b.basis()(i, j);
    Subspace relations = left_kernel(stacked);
    std::vector<Vector> vectors;
    for (std::size_t k = 0; k < relations.dim(); ++k) {
        auto rel = relations.basis().row(k);
        vectors.push_back(multiply(rel.subspan(0, a.dim()), a.basis()));
    }
    return Subspace::span(n, vectors);
}

Quotient::Quotient(const Subspace& big, const Subspace& small) : big_(big), small_(small) {
    if (big.ambient_dim() != small.ambient_dim())
        throw std::invalid_argument("quotient: ambient dimension mismatch");
    if (!big.contains(small))
        throw std::invalid_argument("quotient: denominator is not contained in numerator");
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < big.dim(); ++i) {
        Vector r = small.reduce(big.basis().row(i));
        if (!is_zero(r))
            rows.push_back(std::move(r));
    }
    auto e = echelon_of_rows(std::move(rows), big.ambient_dim());
    reps_ = std::move(e.matrix);
    rep_pivots_ = std::move(e.pivots);
}

Vector Quotient::coordinates(std::span<const Rational> v) const {
    Vector r = small_.reduce(v);
    Vector coords(reps_.rows());
    for (std::size_t k = 0; k < rep_pivots_.size(); ++k) {
        const Rational f = r[rep_pivots_[k]];
        if (sgn(f) == 0)
            continue;
        coords[k] = f;
        auto row = reps_.row(k);
        for (std::size_t j = rep_pivots_[k]; j < row.size(); ++j)
            if (sgn(row[j]) != 0)
                r[j] -= f * row[j];
    }
    if (!is_zero(r))
        throw std::invalid_argument("quotient coordinates: vector is not in the numerator");
    return coords;
}

Quotient quotient_data(const Subspace& big, const Subspace& small) { return Quotient(big, small); }

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), rows_data_(rows) {}

void SparseMatrix::set(std::size_t i, std::size_t j, const Rational& value) {
    if (i >= rows_ || j >= cols_)
        throw std::out_of_range("SparseMatrix::set: index out of range");
    if (sgn(value) == 0)
        rows_data_[i].erase(j);
    else
        rows_data_[i][j] = value;
}

Rational SparseMatrix::get(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_)
        throw std::out_of_range("SparseMatrix::get: index out of range");
    auto it = rows_data_[i].find(j);
    return it == rows_data_[i].end() ? Rational(0) : it->second;
}

bool SparseMatrix::is_zero() const {
    return std::all_of(rows_data_.begin(), rows_data_.end(), [](const auto& r) { return r.empty(); });
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_data_)
        n += r.size();
    return n;
}

std::size_t SparseMatrix::rank() const {
    // Sparse elimination: each stored pivot row is normalized to leading entry 1.
    std::map<std::size_t, std::map<std::size_t, Rational>> pivot_rows;
    for (const auto& original : rows_data_) {
        auto row = original;
        while (!row.empty()) {
            auto lead = row.begin();
            auto it = pivot_rows.find(lead->first);
            if (it == pivot_rows.end()) {
                Rational inv = 1 / lead->second;
                for (auto& [c, v] : row)
                    v *= inv;
                pivot_rows.emplace(lead->first, std::move(row));
                break;
            }
            Rational f = lead->second;
            for (const auto& [c, v] : it->second) {
                Rational& x = row[c];
                x -= f * v;
                if (sgn(x) == 0)
                    row.erase(c);
            }
        }
    }
    return pivot_rows.size();
}

Matrix SparseMatrix::to_dense() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (const auto& [j, v] : rows_data_[i])
            m(i, j) = v;
    return m;
}

Vector SparseMatrix::apply(std::span<const Rational> v) const {
    if (v.size() != rows_)
        throw std::invalid_argument("SparseMatrix::apply: dimension mismatch");
    Vector out(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(v[i]) == 0)
            continue;
        for (const auto& [j, x] : rows_data_[i])
            out[j] += v[i] * x;
    }
    return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.rows_data_ == b.rows_data_;
}

} // namespace ssq
