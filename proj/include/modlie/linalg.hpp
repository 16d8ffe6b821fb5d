#pragma once

// Exact linear algebra over a Field: sparse matrices, canonical reduced row
// echelon form, rank and nullspace, plus a small dense toolkit.
//
// The reduced row echelon form of a row space is unique, so every routine
// below is deterministic irrespective of the elimination path taken (sparse
// or dense).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "modlie/error.hpp"
#include "modlie/field.hpp"

namespace modlie {

template <class Field>
using Vector = std::vector<typename Field::value_type>;

/// Sorted (index, value) pairs without zeros.
template <class Field>
using SparseVector = std::vector<std::pair<std::size_t, typename Field::value_type>>;

template <class Field>
Vector<Field> zero_vector(const Field& field, std::size_t n) {
  return Vector<Field>(n, field.zero());
}

template <class Field>
bool is_zero_vector(const Field& field, const Vector<Field>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return field.is_zero(x); });
}

template <class Field>
SparseVector<Field> to_sparse(const Field& field, const Vector<Field>& v) {
  SparseVector<Field> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!field.is_zero(v[i])) out.emplace_back(i, v[i]);
  }
  return out;
}

template <class Field>
Vector<Field> to_dense(const Field& field, const SparseVector<Field>& v, std::size_t n) {
  Vector<Field> out(n, field.zero());
  for (const auto& [i, x] : v) out[i] = x;
  return out;
}

/// y += a * x
template <class Field>
void axpy(const Field& field, Vector<Field>& y, const typename Field::value_type& a, const Vector<Field>& x) {
  if (field.is_zero(a)) return;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!field.is_zero(x[i])) y[i] = field.fma(y[i], a, x[i]);
  }
}

template <class Field>
void scale(const Field& field, Vector<Field>& v, const typename Field::value_type& a) {
  for (auto& x : v) x = field.mul(x, a);
}

/// Sparse matrix: entries sorted by (row, col), unique positions, no stored zeros.
template <class Field>
class Matrix {
 public:
  using value_type = typename Field::value_type;
  struct Entry {
    std::size_t row;
    std::size_t col;
    value_type value;
  };

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  /// Duplicate positions are summed; zero sums are dropped.
  static Matrix from_entries(const Field& field, std::size_t rows, std::size_t cols, std::vector<Entry> entries) {
    for (const auto& e : entries) {
      if (e.row >= rows || e.col >= cols) fail(ErrorCode::BadSize, "matrix entry out of range");
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    Matrix m(rows, cols);
    for (auto& e : entries) {
      if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
        m.entries_.back().value = field.add(m.entries_.back().value, e.value);
      } else {
        m.entries_.push_back(std::move(e));
      }
    }
    std::erase_if(m.entries_, [&](const Entry& e) { return field.is_zero(e.value); });
    return m;
  }

  static Matrix from_rows(const Field& field, std::size_t cols, const std::vector<Vector<Field>>& rows) {
    std::vector<Entry> entries;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) fail(ErrorCode::BadSize, "row length mismatch");
      for (std::size_t c = 0; c < cols; ++c) {
        if (!field.is_zero(rows[r][c])) entries.push_back({r, c, rows[r][c]});
      }
    }
    return from_entries(field, rows.size(), cols, std::move(entries));
  }

  static Matrix from_sparse_rows(const Field& field, std::size_t cols, const std::vector<SparseVector<Field>>& rows) {
    std::vector<Entry> entries;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [c, v] : rows[r]) entries.push_back({r, c, v});
    }
    return from_entries(field, rows.size(), cols, std::move(entries));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  std::vector<SparseVector<Field>> sparse_rows() const {
    std::vector<SparseVector<Field>> out(rows_);
    for (const auto& e : entries_) out[e.row].emplace_back(e.col, e.value);
    return out;
  }

  Vector<Field> apply(const Field& field, const Vector<Field>& v) const {
    Vector<Field> out(rows_, field.zero());
    for (const auto& e : entries_) out[e.row] = field.fma(out[e.row], e.value, v[e.col]);
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

/// Fully reduced row echelon form: rows[i] has a 1 at pivots[i], zeros at every other pivot.
template <class Field>
struct RowEchelon {
  std::size_t cols = 0;
  std::vector<std::size_t> pivots;
  std::vector<SparseVector<Field>> rows;

  std::size_t rank() const noexcept { return pivots.size(); }
};

namespace detail {

/// Fill ratio of the echelon rows above which elimination switches to dense storage.
inline constexpr double kDenseFillThreshold = 0.25;

template <class Field>
RowEchelon<Field> dense_rref(const Field& field, std::size_t cols, std::vector<Vector<Field>> rows) {
  RowEchelon<Field> out;
  out.cols = cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && field.is_zero(rows[sel][c])) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const auto inv = field.inv(rows[r][c]);
    scale(field, rows[r], inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || field.is_zero(rows[i][c])) continue;
      const auto f = field.neg(rows[i][c]);
      for (std::size_t k = c; k < cols; ++k) {
        if (!field.is_zero(rows[r][k])) rows[i][k] = field.fma(rows[i][k], f, rows[r][k]);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = 0; i < r; ++i) out.rows.push_back(to_sparse(field, rows[i]));
  return out;
}

}  // namespace detail

/// Canonical RREF. Sparse elimination with a dense fallback when the echelon
/// rows fill past a quarter of their width.
template <class Field>
RowEchelon<Field> rref(const Field& field, const Matrix<Field>& m) {
  using value_type = typename Field::value_type;
  const std::size_t cols = m.cols();
  const auto input = m.sparse_rows();

  const double density =
      m.rows() * cols == 0 ? 0.0 : static_cast<double>(m.nnz()) / (static_cast<double>(m.rows()) * cols);
  if (density > detail::kDenseFillThreshold) {
    std::vector<Vector<Field>> dense;
    dense.reserve(input.size());
    for (const auto& row : input) dense.push_back(to_dense(field, row, cols));
    return detail::dense_rref(field, cols, std::move(dense));
  }

  std::vector<std::ptrdiff_t> pivot_row(cols, -1);
  std::vector<SparseVector<Field>> echelon;
  std::vector<std::size_t> pivot_cols;
  std::size_t echelon_nnz = 0;

  Vector<Field> acc(cols, field.zero());
  std::vector<char> queued(cols, 0);
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> heap;

  auto push = [&](std::size_t c) {
    if (!queued[c]) {
      queued[c] = 1;
      heap.push(c);
    }
  };

  std::size_t next = 0;
  for (; next < input.size(); ++next) {
    const auto& row = input[next];
    if (row.empty()) continue;
    for (const auto& [c, v] : row) {
      acc[c] = v;
      push(c);
    }
    bool added = false;
    while (!heap.empty()) {
      const std::size_t c = heap.top();
      heap.pop();
      queued[c] = 0;
      if (field.is_zero(acc[c])) continue;
      if (pivot_row[c] >= 0) {
        const value_type f = field.neg(acc[c]);
        for (const auto& [k, v] : echelon[static_cast<std::size_t>(pivot_row[c])]) {
          acc[k] = field.fma(acc[k], f, v);
          push(k);
        }
        acc[c] = field.zero();
        continue;
      }
      // new pivot at c: collect the remainder of the row
      SparseVector<Field> fresh;
      const value_type inv = field.inv(acc[c]);
      fresh.emplace_back(c, field.one());
      acc[c] = field.zero();
      while (!heap.empty()) {
        const std::size_t k = heap.top();
        heap.pop();
        queued[k] = 0;
        if (!field.is_zero(acc[k])) {
          fresh.emplace_back(k, field.mul(acc[k], inv));
          acc[k] = field.zero();
        }
      }
      pivot_row[c] = static_cast<std::ptrdiff_t>(echelon.size());
      pivot_cols.push_back(c);
      echelon_nnz += fresh.size();
      echelon.push_back(std::move(fresh));
      added = true;
    }
    (void)added;
    if (echelon.size() >= 16 &&
        static_cast<double>(echelon_nnz) > detail::kDenseFillThreshold * echelon.size() * static_cast<double>(cols)) {
      ++next;
      break;
    }
  }

  if (next < input.size()) {
    // fill-in too high: finish densely on [echelon rows; remaining rows]
    std::vector<Vector<Field>> dense;
    for (const auto& row : echelon) dense.push_back(to_dense(field, row, cols));
    for (std::size_t i = next; i < input.size(); ++i) dense.push_back(to_dense(field, input[i], cols));
    return detail::dense_rref(field, cols, std::move(dense));
  }

  // back substitution, highest pivot first
  std::vector<std::size_t> order(echelon.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivot_cols[a] > pivot_cols[b]; });
  for (const std::size_t i : order) {
    auto& row = echelon[i];
    bool needs = false;
    for (std::size_t t = 1; t < row.size(); ++t) {
      if (pivot_row[row[t].first] >= 0) {
        needs = true;
        break;
      }
    }
    if (!needs) continue;
    for (const auto& [c, v] : row) {
      acc[c] = v;
      push(c);
    }
    SparseVector<Field> reduced;
    while (!heap.empty()) {
      const std::size_t c = heap.top();
      heap.pop();
      queued[c] = 0;
      if (field.is_zero(acc[c])) continue;
      if (c != pivot_cols[i] && pivot_row[c] >= 0) {
        const value_type f = field.neg(acc[c]);
        for (const auto& [k, w] : echelon[static_cast<std::size_t>(pivot_row[c])]) {
          acc[k] = field.fma(acc[k], f, w);
          push(k);
        }
        acc[c] = field.zero();
        continue;
      }
      reduced.emplace_back(c, acc[c]);
      acc[c] = field.zero();
    }
    row = std::move(reduced);
  }

  RowEchelon<Field> out;
  out.cols = cols;
  std::vector<std::size_t> by_pivot(echelon.size());
  for (std::size_t i = 0; i < by_pivot.size(); ++i) by_pivot[i] = i;
  std::sort(by_pivot.begin(), by_pivot.end(),
            [&](std::size_t a, std::size_t b) { return pivot_cols[a] < pivot_cols[b]; });
  for (const std::size_t i : by_pivot) {
    out.pivots.push_back(pivot_cols[i]);
    out.rows.push_back(std::move(echelon[i]));
  }
  return out;
}

/// Dense-only RREF; exposed so tests can cross-check the sparse path.
template <class Field>
RowEchelon<Field> rref_dense(const Field& field, const Matrix<Field>& m) {
  std::vector<Vector<Field>> dense;
  for (const auto& row : m.sparse_rows()) dense.push_back(to_dense(field, row, m.cols()));
  return detail::dense_rref(field, m.cols(), std::move(dense));
}

template <class Field>
std::size_t rank(const Field& field, const Matrix<Field>& m) {
  return rref(field, m).rank();
}

/// Nullspace basis read off the RREF: one vector per free column (ascending),
/// with a 1 in that column and 0 in the other free columns.
template <class Field>
std::vector<Vector<Field>> nullspace_from_rref(const Field& field, const RowEchelon<Field>& e) {
  std::vector<char> is_pivot(e.cols, 0);
  for (const auto c : e.pivots) is_pivot[c] = 1;
  std::vector<std::size_t> free_index(e.cols, 0);
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < e.cols; ++c) {
    if (!is_pivot[c]) {
      free_index[c] = free_cols.size();
      free_cols.push_back(c);
    }
  }
  std::vector<Vector<Field>> basis(free_cols.size(), Vector<Field>(e.cols, field.zero()));
  for (std::size_t f = 0; f < free_cols.size(); ++f) basis[f][free_cols[f]] = field.one();
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    for (const auto& [c, v] : e.rows[r]) {
      if (c == e.pivots[r]) continue;
      basis[free_index[c]][e.pivots[r]] = field.neg(v);
    }
  }
  return basis;
}

template <class Field>
std::vector<Vector<Field>> nullspace(const Field& field, const Matrix<Field>& m) {
  return nullspace_from_rref(field, rref(field, m));
}

/// Subspace of K^n kept in canonical RREF; supports membership and reduction.
template <class Field>
class Subspace {
 public:
  using value_type = typename Field::value_type;

  Subspace() = default;
  Subspace(const Field& field, std::size_t n) : field_(&field), n_(n) {}
  Subspace(const Field& field, std::size_t n, const std::vector<Vector<Field>>& vectors) : field_(&field), n_(n) {
    if (!vectors.empty()) {
      const auto e = rref(field, Matrix<Field>::from_rows(field, n, vectors));
      pivots_ = e.pivots;
      for (const auto& r : e.rows) rows_.push_back(to_dense(field, r, n));
    }
  }

  std::size_t ambient() const noexcept { return n_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<Vector<Field>>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// v minus its projection along the pivot coordinates.
  Vector<Field> reduce(Vector<Field> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto c = v[pivots_[i]];
      if (!field_->is_zero(c)) axpy(*field_, v, field_->neg(c), rows_[i]);
    }
    return v;
  }

  bool contains(const Vector<Field>& v) const { return is_zero_vector(*field_, reduce(v)); }

  /// Coordinates with respect to basis(); nullopt when v is outside.
  std::optional<Vector<Field>> coordinates(const Vector<Field>& v) const {
    Vector<Field> c(rows_.size(), field_->zero());
    for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
    if (!contains(v)) return std::nullopt;
    return c;
  }

  /// Adds v; returns false when v was already in the span.
  bool add(const Vector<Field>& v) {
    auto r = reduce(v);
    if (is_zero_vector(*field_, r)) return false;
    auto all = rows_;
    all.push_back(std::move(r));
    *this = Subspace(*field_, n_, all);
    return true;
  }

  bool operator==(const Subspace& other) const {
    if (n_ != other.n_ || pivots_ != other.pivots_) return false;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      for (std::size_t k = 0; k < n_; ++k) {
        if (!field_->equal(rows_[i][k], other.rows_[i][k])) return false;
      }
    }
    return true;
  }

 private:
  const Field* field_ = nullptr;
  std::size_t n_ = 0;
  std::vector<std::size_t> pivots_;
  std::vector<Vector<Field>> rows_;
};

/// Span of a list of vectors with coordinates expressed in that list (not in RREF rows).
/// Throws BadSize when the list is dependent.
template <class Field>
class BasisSpan {
 public:
  BasisSpan() = default;
  BasisSpan(const Field& field, std::size_t n, const std::vector<Vector<Field>>& vectors)
      : field_(&field), n_(n), count_(vectors.size()) {
    std::vector<Vector<Field>> aug;
    aug.reserve(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != n) fail(ErrorCode::BadSize, "vector length mismatch");
      Vector<Field> row = vectors[i];
      row.resize(n + vectors.size(), field.zero());
      row[n + i] = field.one();
      aug.push_back(std::move(row));
    }
    const auto e = rref(field, Matrix<Field>::from_rows(field, n + vectors.size(), aug));
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      if (e.pivots[i] >= n) fail(ErrorCode::BadSize, "basis vectors are linearly dependent");
      pivots_.push_back(e.pivots[i]);
      Vector<Field> head(n, field.zero());
      SparseVector<Field> tail;
      for (const auto& [c, v] : e.rows[i]) {
        if (c < n) {
          head[c] = v;
        } else {
          tail.emplace_back(c - n, v);
        }
      }
      rows_.push_back(std::move(head));
      combos_.push_back(std::move(tail));
    }
  }

  std::size_t dim() const noexcept { return count_; }

  std::optional<Vector<Field>> coordinates(const Vector<Field>& v) const {
    Vector<Field> r = v;
    Vector<Field> out(count_, field_->zero());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto c = r[pivots_[i]];
      if (field_->is_zero(c)) continue;
      axpy(*field_, r, field_->neg(c), rows_[i]);
      for (const auto& [b, w] : combos_[i]) out[b] = field_->fma(out[b], c, w);
    }
    if (!is_zero_vector(*field_, r)) return std::nullopt;
    return out;
  }

 private:
  const Field* field_ = nullptr;
  std::size_t n_ = 0;
  std::size_t count_ = 0;
  std::vector<std::size_t> pivots_;
  std::vector<Vector<Field>> rows_;
  std::vector<SparseVector<Field>> combos_;
};

/// Dense square/rectangular matrix (row major) used for matrix algebras and module actions.
template <class Field>
class DenseMatrix {
 public:
  using value_type = typename Field::value_type;

  DenseMatrix() = default;
  DenseMatrix(const Field& field, std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static DenseMatrix identity(const Field& field, std::size_t n) {
    DenseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  static DenseMatrix unit(const Field& field, std::size_t n, std::size_t i, std::size_t j) {
    DenseMatrix m(field, n, n);
    m(i, j) = field.one();
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<value_type>& data() const noexcept { return data_; }

  DenseMatrix mul(const Field& field, const DenseMatrix& b) const {
    if (cols_ != b.rows_) fail(ErrorCode::BadSize, "matrix product shape mismatch");
    DenseMatrix out(field, rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& a = (*this)(i, k);
        if (field.is_zero(a)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!field.is_zero(b(k, j))) out(i, j) = field.fma(out(i, j), a, b(k, j));
        }
      }
    }
    return out;
  }

  DenseMatrix add(const Field& field, const DenseMatrix& b, const value_type& s) const {
    DenseMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field.fma(out.data_[i], s, b.data_[i]);
    return out;
  }

  DenseMatrix scaled(const Field& field, const value_type& s) const {
    DenseMatrix out = *this;
    for (auto& x : out.data_) x = field.mul(x, s);
    return out;
  }

  DenseMatrix transpose(const Field& field) const {
    DenseMatrix out(field, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
  }

  /// [A, B] = AB - BA
  DenseMatrix commutator(const Field& field, const DenseMatrix& b) const {
    return mul(field, b).add(field, b.mul(field, *this), field.neg(field.one()));
  }

  Vector<Field> apply(const Field& field, const Vector<Field>& v) const {
    Vector<Field> out(rows_, field.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!field.is_zero((*this)(i, j))) out[i] = field.fma(out[i], (*this)(i, j), v[j]);
      }
    }
    return out;
  }

  Vector<Field> column(std::size_t j) const {
    Vector<Field> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return out;
  }

  bool is_zero(const Field& field) const {
    return std::all_of(data_.begin(), data_.end(), [&](const auto& x) { return field.is_zero(x); });
  }

  bool equal(const Field& field, const DenseMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (!field.equal(data_[i], b.data_[i])) return false;
    }
    return true;
  }

  /// Row-major flattening, used when matrices are treated as vectors.
  Vector<Field> flatten() const { return data_; }
  static DenseMatrix unflatten(std::size_t rows, std::size_t cols, Vector<Field> data) {
    DenseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(data);
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

/// Solves A x = b for one particular solution, or nullopt when inconsistent.
template <class Field>
std::optional<Vector<Field>> solve(const Field& field, const Matrix<Field>& a, const Vector<Field>& b) {
  // augment with b as the last column; consistent iff no pivot lands there
  std::vector<typename Matrix<Field>::Entry> entries(a.entries().begin(), a.entries().end());
  for (std::size_t r = 0; r < b.size(); ++r) {
    if (!field.is_zero(b[r])) entries.push_back({r, a.cols(), b[r]});
  }
  const auto aug = Matrix<Field>::from_entries(field, a.rows(), a.cols() + 1, std::move(entries));
  const auto e = rref(field, aug);
  Vector<Field> x(a.cols(), field.zero());
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == a.cols()) return std::nullopt;
    for (const auto& [c, v] : e.rows[i]) {
      if (c == a.cols()) x[e.pivots[i]] = v;
    }
  }
  return x;
}

}  // namespace modlie
