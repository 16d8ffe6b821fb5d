#pragma once

// Queerification of matrix algebras: Q(A) = A + eps A for associative A, and the
// p = 2 variant for Lie algebras closed under matrix squaring.

#include <string>
#include <vector>

#include "modlie/algebra.hpp"

namespace modlie {

namespace detail {

template <class Field>
std::vector<BasisLabel> queer_labels(const MatrixAlgebra<Field>& m) {
  std::vector<BasisLabel> labels;
  for (const auto& l : m.labels) labels.push_back({l, false, 0});
  for (const auto& l : m.labels) labels.push_back({"Π" + l, true, 0});
  return labels;
}

template <class Field>
SparseVector<Field> coords_or(const Field& field, const BasisSpan<Field>& span, const DenseMatrix<Field>& x,
                              ErrorCode code, const std::string& what) {
  const auto c = span.coordinates(x.flatten());
  if (!c) fail(code, what);
  return to_sparse(field, *c);
}

template <class Field>
SparseVector<Field> shifted(SparseVector<Field> c, std::size_t by) {
  for (auto& [k, v] : c) k += by;
  return c;
}

template <class Field>
std::string render_matrix(const Field& field, const DenseMatrix<Field>& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.rows(); ++i) {
    s += i ? "; " : "";
    for (std::size_t j = 0; j < x.cols(); ++j) s += (j ? " " : "") + field.to_string(x(i, j));
  }
  return s + "]";
}

}  // namespace detail

/// Q(A) for an associative matrix algebra A: [a, b] = ab - ba, [a, eb] = e(ab - ba),
/// [ea, eb] = -(ab + ba); at p = 2 also (ea)^2 = a^2.
template <class Field>
SCAlgebra<Field> queerify_assoc(const Field& field, const MatrixAlgebra<Field>& m) {
  const std::size_t d = m.dim();
  const BasisSpan<Field> span(field, m.n * m.n, detail::flatten_all(m.basis));
  std::vector<std::vector<DenseMatrix<Field>>> prod(d, std::vector<DenseMatrix<Field>>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      prod[i][j] = m.basis[i].mul(field, m.basis[j]);
      if (!span.coordinates(prod[i][j].flatten())) {
        fail(ErrorCode::NotClosed, "not closed under products: " + m.labels[i] + " * " + m.labels[j]);
      }
    }
  }
  SCAlgebra<Field> a(field, detail::queer_labels(m));
  const auto minus = field.neg(field.one());
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto comm = prod[i][j].add(field, prod[j][i], minus);
      const auto c = detail::coords_or(field, span, comm, ErrorCode::NotClosed, "commutator");
      if (i < j) a.set_bracket(i, j, c);
      a.set_bracket(i, d + j, detail::shifted<Field>(c, d));
      if (i <= j && (i != j || !a.char2())) {
        const auto anti = prod[i][j].add(field, prod[j][i], field.one()).scaled(field, minus);
        a.set_bracket(d + i, d + j, detail::coords_or(field, span, anti, ErrorCode::NotClosed, "anticommutator"));
      }
    }
    if (a.char2()) a.set_square(d + i, detail::coords_or(field, span, prod[i][i], ErrorCode::NotClosed, "square"));
  }
  return a;
}

/// p = 2 queerification of a Lie algebra of matrices closed under squaring:
/// [x, Py] = P[x, y], [Px, Py] = xy + yx, (Px)^2 = x^2.
template <class Field>
SCAlgebra<Field> queerify_p2(const Field& field, const MatrixAlgebra<Field>& m) {
  if (field.characteristic() != 2) fail(ErrorCode::WrongChar, "queerify_p2 needs p = 2");
  const std::size_t d = m.dim();
  const BasisSpan<Field> span(field, m.n * m.n, detail::flatten_all(m.basis));
  SCAlgebra<Field> a(field, detail::queer_labels(m));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      const auto xy = m.basis[i].mul(field, m.basis[j]);
      const auto yx = m.basis[j].mul(field, m.basis[i]);
      const auto sym = xy.add(field, yx, field.one());
      if (i == j) {
        if (!span.coordinates(xy.flatten())) {
          fail(ErrorCode::NotSquaringClosed, "square of " + m.labels[i] + " = " + detail::render_matrix(field, xy) +
                                                 " leaves the span");
        }
        a.set_square(d + i, to_sparse(field, *span.coordinates(xy.flatten())));
        continue;
      }
      if (!span.coordinates(sym.flatten())) {
        fail(ErrorCode::NotSquaringClosed, m.labels[i] + " * " + m.labels[j] + " + " + m.labels[j] + " * " +
                                               m.labels[i] + " = " + detail::render_matrix(field, sym) + " leaves the span");
      }
      const auto comm = detail::coords_or(field, span, xy.add(field, yx, field.neg(field.one())), ErrorCode::NotClosed,
                                          "commutator of " + m.labels[i] + " and " + m.labels[j] + " leaves the span");
      a.set_bracket(i, j, comm);
      a.set_bracket(i, d + j, detail::shifted<Field>(comm, d));
      a.set_bracket(j, d + i, detail::shifted<Field>(comm, d));
      a.set_bracket(d + i, d + j, to_sparse(field, *span.coordinates(sym.flatten())));
    }
  }
  return a;
}

}  // namespace modlie
