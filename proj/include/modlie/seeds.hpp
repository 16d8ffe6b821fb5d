#pragma once

// Seed data for prolongation: classical matrix algebras with integer bases,
// their modules (tensor, spinor), and realizations of (g_-, g_0) as vector
// fields of non-positive degree.
//
// Forms are split (antidiagonal): G_{i,m+1-i} = 1 for o(m); for sp(2k),
// J_{i,2k+1-i} = 1 when i <= k and -1 otherwise.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "modlie/error.hpp"
#include "modlie/linalg.hpp"
#include "modlie/vfield.hpp"

namespace modlie {

template <class Field>
struct MatrixAlgebra {
  std::size_t n = 0;
  std::vector<DenseMatrix<Field>> basis;
  std::vector<std::string> labels;
  /// gl, sl, sp, o (or "custom")
  std::string family;
  /// Identity appended as the last basis element.
  bool central = false;
  std::optional<DenseMatrix<Field>> form;

  std::size_t dim() const noexcept { return basis.size(); }
};

template <class Field>
struct ModuleSpec {
  std::string kind;
  std::size_t dim = 0;
  /// One matrix per basis element of g0, in the same order.
  std::vector<DenseMatrix<Field>> action;
};

template <class Field>
struct Realization {
  Variables vars;
  int depth = 1;
  /// Degrees -depth..0.
  std::map<int, std::vector<FieldSum<Field>>> components;
  std::string seed;
};

namespace detail {

template <class Field>
std::vector<Vector<Field>> flatten_all(const std::vector<DenseMatrix<Field>>& ms) {
  std::vector<Vector<Field>> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(m.flatten());
  return out;
}

template <class Field>
std::size_t dense_rank(const Field& field, const DenseMatrix<Field>& m) {
  std::vector<Vector<Field>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Vector<Field> row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rank(field, Matrix<Field>::from_rows(field, m.cols(), rows));
}

template <class Field>
DenseMatrix<Field> split_form(const Field& field, std::size_t n, bool symplectic) {
  DenseMatrix<Field> g(field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, n - 1 - i) = (!symplectic || i < n / 2) ? field.one() : field.neg(field.one());
  }
  return g;
}

}  // namespace detail

/// Structure constants check: basis independent and commutator-closed.
template <class Field>
void check_matrix_algebra(const Field& field, const MatrixAlgebra<Field>& a) {
  const BasisSpan<Field> span(field, a.n * a.n, detail::flatten_all(a.basis));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i + 1; j < a.dim(); ++j) {
      if (!span.coordinates(a.basis[i].commutator(field, a.basis[j]).flatten())) {
        fail(ErrorCode::NotClosed, "[" + a.labels[i] + ", " + a.labels[j] + "] leaves the span");
      }
    }
  }
  if (a.form) {
    const auto& g = *a.form;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const auto lhs = a.basis[i].transpose(field).mul(field, g).add(field, g.mul(field, a.basis[i]), field.one());
      if (!lhs.is_zero(field)) fail(ErrorCode::Internal, a.labels[i] + " does not preserve the form");
    }
  }
}

/// gl(n), sl(n), sp(n) (n even), o(n) with integer bases reduced into the field.
template <class Field>
MatrixAlgebra<Field> seed_matrix(const Field& field, std::string_view family, std::size_t n) {
  if (n < 1) fail(ErrorCode::BadSize, "matrix size must be at least 1");
  MatrixAlgebra<Field> a;
  a.n = n;
  a.family = std::string(family);
  auto label = [](const char* s, std::size_t i, std::size_t j) {
    return std::string(s) + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  if (family == "gl") {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        a.basis.push_back(DenseMatrix<Field>::unit(field, n, i, j));
        a.labels.push_back(label("E", i, j));
      }
    }
  } else if (family == "sl") {
    if (n < 2) fail(ErrorCode::BadSize, "sl(n) needs n >= 2");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        a.basis.push_back(DenseMatrix<Field>::unit(field, n, i, j));
        a.labels.push_back(label("E", i, j));
      }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      auto h = DenseMatrix<Field>::unit(field, n, i, i);
      h(i + 1, i + 1) = field.neg(field.one());
      a.basis.push_back(h);
      a.labels.push_back("H" + std::to_string(i + 1));
    }
  } else if (family == "sp") {
    if (n % 2 != 0) fail(ErrorCode::BadSize, "sp(n) needs n even");
    const auto j = detail::split_form(field, n, true);
    a.form = j;
    // X = S J with S symmetric
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r; c < n; ++c) {
        auto s = DenseMatrix<Field>::unit(field, n, r, c);
        s(c, r) = field.one();
        a.basis.push_back(s.mul(field, j));
        a.labels.push_back(label("S", r, c));
      }
    }
  } else if (family == "o") {
    if (field.characteristic() == 2) fail(ErrorCode::UnsupportedChar, "o(n) is not supported at p = 2");
    const auto g = detail::split_form(field, n, false);
    a.form = g;
    // A_ab x = G(e_b, x) e_a - G(e_a, x) e_b, i.e. (E_ab - E_ba) G
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) {
        auto s = DenseMatrix<Field>::unit(field, n, r, c);
        s(c, r) = field.neg(field.one());
        a.basis.push_back(s.mul(field, g));
        a.labels.push_back(label("A", r, c));
      }
    }
  } else {
    fail(ErrorCode::InvalidInput, "unknown matrix family '" + std::string(family) + "'");
  }
  check_matrix_algebra(field, a);
  return a;
}

/// c-extension: appends the identity matrix.
template <class Field>
MatrixAlgebra<Field> with_center(const Field& field, MatrixAlgebra<Field> a) {
  if (a.central) return a;
  const auto id = DenseMatrix<Field>::identity(field, a.n);
  auto flat = detail::flatten_all(a.basis);
  if (Subspace<Field>(field, a.n * a.n, flat).contains(id.flatten())) {
    fail(ErrorCode::BadSize, "identity already lies in " + a.family + "(" + std::to_string(a.n) + ")");
  }
  a.basis.push_back(id);
  a.labels.push_back("I");
  a.central = true;
  a.form.reset();
  return a;
}

/// Checks rho([A_i, A_j]) = [rho(A_i), rho(A_j)] on all basis pairs.
template <class Field>
void check_module(const Field& field, const MatrixAlgebra<Field>& g0, const ModuleSpec<Field>& v) {
  if (v.action.size() != g0.dim()) fail(ErrorCode::ActionMismatch, "one action matrix per basis element required");
  const BasisSpan<Field> span(field, g0.n * g0.n, detail::flatten_all(g0.basis));
  for (std::size_t i = 0; i < g0.dim(); ++i) {
    for (std::size_t j = i + 1; j < g0.dim(); ++j) {
      const auto c = span.coordinates(g0.basis[i].commutator(field, g0.basis[j]).flatten());
      if (!c) fail(ErrorCode::NotClosed, "g0 is not closed");
      DenseMatrix<Field> expect(field, v.dim, v.dim);
      for (std::size_t k = 0; k < g0.dim(); ++k) {
        if (!field.is_zero((*c)[k])) expect = expect.add(field, v.action[k], (*c)[k]);
      }
      if (!expect.equal(field, v.action[i].commutator(field, v.action[j]))) {
        fail(ErrorCode::ActionMismatch,
             v.kind + ": action is not a homomorphism on (" + g0.labels[i] + ", " + g0.labels[j] + ")");
      }
    }
  }
}

namespace detail {

/// Sorted index tuples of length k over {0..n-1}; strict for exterior powers.
inline std::vector<std::vector<std::size_t>> index_tuples(std::size_t n, std::size_t k, bool strict) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(strict ? i + 1 : i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Derived action of A on S^k V (strict = false) or Lambda^k V (strict = true).
template <class Field>
DenseMatrix<Field> tensor_action(const Field& field, const DenseMatrix<Field>& a,
                                 const std::vector<std::vector<std::size_t>>& basis, bool strict) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  DenseMatrix<Field> out(field, basis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto& t = basis[col];
    for (std::size_t pos = 0; pos < t.size(); ++pos) {
      for (std::size_t j = 0; j < a.rows(); ++j) {
        const auto c = a(j, t[pos]);
        if (field.is_zero(c)) continue;
        auto u = t;
        u[pos] = j;
        bool negate = false;
        if (strict) {
          // bubble sort, tracking the permutation sign; repeated index kills the term
          bool repeated = false;
          for (std::size_t x = 0; x < u.size(); ++x) {
            for (std::size_t y = 0; y + 1 < u.size() - x; ++y) {
              if (u[y] > u[y + 1]) {
                std::swap(u[y], u[y + 1]);
                negate = !negate;
              }
            }
          }
          for (std::size_t y = 0; y + 1 < u.size(); ++y) repeated = repeated || u[y] == u[y + 1];
          if (repeated) continue;
        } else {
          std::sort(u.begin(), u.end());
        }
        const std::size_t row = index.at(u);
        out(row, col) = field.add(out(row, col), negate ? field.neg(c) : c);
      }
    }
  }
  return out;
}

/// Spinor operators on Lambda(xi_1..xi_K): gamma(e_i) for the split form of size m.
template <class Field>
std::vector<DenseMatrix<Field>> clifford_generators(const Field& field, std::size_t m, std::size_t& big_k) {
  const std::size_t k = m / 2;
  big_k = k + (m % 2);
  const std::size_t dim = std::size_t{1} << big_k;
  auto creation = [&](std::size_t i) {
    DenseMatrix<Field> x(field, dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
      if (s >> i & 1U) continue;
      const int before = std::popcount(s & ((std::size_t{1} << i) - 1));
      x(s | (std::size_t{1} << i), s) = (before & 1) ? field.neg(field.one()) : field.one();
    }
    return x;
  };
  auto annihilation = [&](std::size_t i) {
    DenseMatrix<Field> x(field, dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
      if (!(s >> i & 1U)) continue;
      const int before = std::popcount(s & ((std::size_t{1} << i) - 1));
      x(s & ~(std::size_t{1} << i), s) = (before & 1) ? field.neg(field.one()) : field.one();
    }
    return x;
  };
  std::vector<DenseMatrix<Field>> gamma(m);
  for (std::size_t i = 0; i < k; ++i) {
    gamma[i] = creation(i);
    gamma[m - 1 - i] = annihilation(i);
  }
  if (m % 2 == 1) {
    const auto half = field.inv(field.from_int(2));
    gamma[k] = creation(k).add(field, annihilation(k), half);
  }
  return gamma;
}

}  // namespace detail

/// Spin representation of o(m) (+ center acting as identity): quadratic Clifford
/// elements e_a e_b - G(e_a, e_b)/2 on the even part of Lambda(xi_1..xi_K).
/// Dimension 2^{floor(m/2)} for odd m, 2^{m/2 - 1} for even m.
template <class Field>
ModuleSpec<Field> spinor_clifford(const Field& field, const MatrixAlgebra<Field>& o) {
  if (field.characteristic() == 2) fail(ErrorCode::UnsupportedChar, "spinors need p != 2");
  if (o.family != "o") fail(ErrorCode::IncompatibleKind, "spinors need an orthogonal algebra");
  const std::size_t m = o.n;
  if (m < 3) fail(ErrorCode::BadSize, "spinors need m >= 3");
  std::size_t big_k = 0;
  const auto gamma = detail::clifford_generators(field, m, big_k);
  std::vector<std::size_t> even;
  for (std::size_t s = 0; s < (std::size_t{1} << big_k); ++s) {
    if (std::popcount(s) % 2 == 0) even.push_back(s);
  }
  const auto half = field.inv(field.from_int(2));
  ModuleSpec<Field> out;
  out.kind = m % 2 == 0 ? "halfspin" : "spinor";
  out.dim = even.size();
  std::size_t idx = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b, ++idx) {
      auto q = gamma[a].mul(field, gamma[b]);
      if (b == m - 1 - a) {
        for (std::size_t s = 0; s < q.rows(); ++s) q(s, s) = field.sub(q(s, s), half);
      }
      DenseMatrix<Field> r(field, even.size(), even.size());
      for (std::size_t i = 0; i < even.size(); ++i) {
        for (std::size_t j = 0; j < even.size(); ++j) r(i, j) = q(even[i], even[j]);
      }
      out.action.push_back(std::move(r));
    }
  }
  if (o.central) out.action.push_back(DenseMatrix<Field>::identity(field, out.dim));
  check_module(field, o, out);
  return out;
}

/// phi1, sym2, wedge2, wedge3_0 (sp), sym3_of_gl2, spinor / halfspin (o).
template <class Field>
ModuleSpec<Field> module_build(const Field& field, const MatrixAlgebra<Field>& g0, std::string_view kind) {
  const std::string k(kind);
  if (k == "spinor" || k == "halfspin") {
    if (g0.family != "o") fail(ErrorCode::IncompatibleKind, k + " requires an orthogonal algebra");
    if (k == "halfspin" && g0.n % 2 != 0) fail(ErrorCode::IncompatibleKind, "halfspin requires o(2k)");
    if (k == "spinor" && g0.n % 2 == 0) fail(ErrorCode::IncompatibleKind, "use halfspin for o(2k)");
    auto out = spinor_clifford(field, g0);
    out.kind = k;
    return out;
  }
  ModuleSpec<Field> out;
  out.kind = k;
  if (k == "phi1") {
    out.dim = g0.n;
    out.action = g0.basis;
  } else if (k == "sym2" || k == "wedge2" || k == "sym3_of_gl2") {
    const bool strict = k == "wedge2";
    const std::size_t power = k == "sym3_of_gl2" ? 3 : 2;
    if (k == "sym2" && field.characteristic() == 2) fail(ErrorCode::UnsupportedChar, "sym2 is rejected at p = 2");
    if (k == "sym3_of_gl2" && (g0.n != 2 || (g0.family != "gl" && g0.family != "sl"))) {
      fail(ErrorCode::IncompatibleKind, "sym3_of_gl2 requires gl(2) or sl(2)");
    }
    if (k == "sym3_of_gl2" && field.characteristic() == 2) {
      fail(ErrorCode::UnsupportedChar, "sym3_of_gl2 is rejected at p = 2");
    }
    const auto basis = detail::index_tuples(g0.n, power, strict);
    out.dim = basis.size();
    for (const auto& a : g0.basis) out.action.push_back(detail::tensor_action(field, a, basis, strict));
  } else if (k == "wedge3_0") {
    if (g0.family != "sp" || !(g0.n >= 4)) fail(ErrorCode::IncompatibleKind, "wedge3_0 requires sp(2k), k >= 2");
    const std::size_t n = g0.n;
    const auto basis = detail::index_tuples(n, 3, true);
    const auto j = detail::split_form(field, n, true);
    // contraction e_a^e_b^e_c -> J_ab e_c - J_ac e_b + J_bc e_a
    std::vector<typename Matrix<Field>::Entry> entries;
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const auto a = basis[col][0], b = basis[col][1], c = basis[col][2];
      entries.push_back({c, col, j(a, b)});
      entries.push_back({b, col, field.neg(j(a, c))});
      entries.push_back({a, col, j(b, c)});
    }
    const auto kernel = nullspace(field, Matrix<Field>::from_entries(field, n, basis.size(), entries));
    const BasisSpan<Field> span(field, basis.size(), kernel);
    out.dim = kernel.size();
    for (const auto& a : g0.basis) {
      const auto big = detail::tensor_action(field, a, basis, true);
      DenseMatrix<Field> r(field, out.dim, out.dim);
      for (std::size_t col = 0; col < kernel.size(); ++col) {
        const auto c = span.coordinates(big.apply(field, kernel[col]));
        if (!c) fail(ErrorCode::Internal, "wedge3_0 is not invariant");
        for (std::size_t row = 0; row < out.dim; ++row) r(row, col) = (*c)[row];
      }
      out.action.push_back(std::move(r));
    }
  } else {
    fail(ErrorCode::IncompatibleKind, "unknown module kind '" + k + "'");
  }
  check_module(field, g0, out);
  return out;
}

/// Depth-1 variables x1..xn with unit weights.
inline Variables depth1_variables(std::size_t n, std::uint64_t p, const std::optional<std::vector<std::uint32_t>>& heights) {
  return Variables::standard(n, 0, p, heights);
}

/// X_A = -sum_{i,j} A_ij x_j d_i
template <class Field>
FieldSum<Field> linear_field(const Field& field, const Variables& vars, const DenseMatrix<Field>& a) {
  std::vector<typename FieldSum<Field>::Term> t;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (field.is_zero(a(i, j))) continue;
      Monomial m = Monomial::unit(vars);
      m.exps[j] = 1;
      t.emplace_back(FieldKey{static_cast<std::uint32_t>(i), m}, field.neg(a(i, j)));
    }
  }
  return FieldSum<Field>::from_terms(field, std::move(t));
}

/// Checks [X_A, X_B] = X_[A,B] for a g0 given by fields paired with matrices.
template <class Field>
void check_embedding(const Field& field, const Variables& vars, const MatrixAlgebra<Field>& g0,
                     const std::vector<FieldSum<Field>>& fields) {
  const BasisSpan<Field> span(field, g0.n * g0.n, detail::flatten_all(g0.basis));
  for (std::size_t i = 0; i < g0.dim(); ++i) {
    for (std::size_t j = i + 1; j < g0.dim(); ++j) {
      const auto c = span.coordinates(g0.basis[i].commutator(field, g0.basis[j]).flatten());
      if (!c) fail(ErrorCode::NotClosed, "g0 is not closed");
      if (!(vf_bracket(field, vars, fields[i], fields[j]) == fs_combine(field, fields, *c))) {
        fail(ErrorCode::ActionMismatch, "embedding is not a homomorphism on (" + g0.labels[i] + ", " +
                                            g0.labels[j] + ")");
      }
    }
  }
}

/// Non-positive part, closure, generation of g_- by g_-1.
template <class Field>
void check_realization(const Field& field, const Realization<Field>& r) {
  const auto report = closure_check(field, r.vars, r.components);
  if (!report.ok) {
    fail(ErrorCode::ActionMismatch, "realization not closed at degrees (" + std::to_string(report.i) + ", " +
                                        std::to_string(report.j) + ")");
  }
  if (r.depth == 2) {
    const auto& m1 = r.components.at(-1);
    std::vector<FieldSum<Field>> brackets;
    for (std::size_t i = 0; i < m1.size(); ++i) {
      for (std::size_t j = i + 1; j < m1.size(); ++j) brackets.push_back(vf_bracket(field, r.vars, m1[i], m1[j]));
    }
    const FieldSpan<Field> span(field, brackets);
    if (span.dim() != r.components.at(-2).size()) fail(ErrorCode::FormDegenerate, "g_-1 does not generate g_-2");
  }
}

/// g_-1 = V as constant fields d_i, g_0 = { X_A }.
template <class Field>
Realization<Field> embed_depth1(const Field& field, const MatrixAlgebra<Field>& g0, const ModuleSpec<Field>& v,
                                const std::optional<std::vector<std::uint32_t>>& heights = std::nullopt,
                                std::string seed = {}) {
  Realization<Field> r;
  r.vars = depth1_variables(v.dim, field.characteristic(), heights);
  r.depth = 1;
  r.seed = std::move(seed);
  auto& neg = r.components[-1];
  for (std::size_t i = 0; i < v.dim; ++i) neg.push_back(FieldSum<Field>::partial(field, r.vars, i));
  auto& zero = r.components[0];
  for (const auto& a : v.action) zero.push_back(linear_field(field, r.vars, a));
  if (!FieldSpan<Field>(field, zero).independent()) fail(ErrorCode::ActionMismatch, "module action is not faithful");
  check_embedding(field, r.vars, g0, zero);
  check_realization(field, r);
  return r;
}

/// Antisymmetric bilinear forms w with D^T w + w D = 0 for all D in the derived algebra of the action.
template <class Field>
std::vector<DenseMatrix<Field>> invariant_forms(const Field& field, const ModuleSpec<Field>& v) {
  const std::size_t n = v.dim;
  std::vector<Vector<Field>> comms;
  for (std::size_t i = 0; i < v.action.size(); ++i) {
    for (std::size_t j = i + 1; j < v.action.size(); ++j) comms.push_back(v.action[i].commutator(field, v.action[j]).flatten());
  }
  const Subspace<Field> derived(field, n * n, comms);
  // unknown w_kl (k < l), column index u(k, l)
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) pairs.emplace_back(k, l);
  }
  std::vector<typename Matrix<Field>::Entry> entries;
  std::size_t row = 0;
  for (const auto& flat : derived.basis()) {
    const auto d = DenseMatrix<Field>::unflatten(n, n, flat);
    // (D^T w + w D)_{ab} = sum_k D_ka w_kb + sum_k w_ak D_kb
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b, ++row) {
        for (std::size_t u = 0; u < pairs.size(); ++u) {
          const auto [k, l] = pairs[u];
          // w = sum_u w_u (E_kl - E_lk)
          auto coef = field.zero();
          if (b == l) coef = field.add(coef, d(k, a));
          if (b == k) coef = field.sub(coef, d(l, a));
          if (a == k) coef = field.add(coef, d(l, b));
          if (a == l) coef = field.sub(coef, d(k, b));
          if (!field.is_zero(coef)) entries.push_back({row, u, coef});
        }
      }
    }
  }
  const auto sols = nullspace(field, Matrix<Field>::from_entries(field, row, pairs.size(), entries));
  std::vector<DenseMatrix<Field>> out;
  for (const auto& s : sols) {
    DenseMatrix<Field> w(field, n, n);
    for (std::size_t u = 0; u < pairs.size(); ++u) {
      w(pairs[u].first, pairs[u].second) = s[u];
      w(pairs[u].second, pairs[u].first) = field.neg(s[u]);
    }
    out.push_back(std::move(w));
  }
  return out;
}

/// Depth-2 realization with g_-2 = span(d_y1..d_yr) and [T_i, T_j] = sum_a w^a_ij d_ya.
///
/// T_i = d_i + sum_a sum_k b^a_ki x_k d_ya with b^a the strict upper part of w^a, so that
/// b - b^T = w and no division by 2 occurs. g_0 acts on g_-2 through C with
/// A^T w^a + w^a A = sum_c C_ac w^c and is lifted as
///   Z_A = -sum A_ij x_j d_i - sum C_ab y_b d_ya + sum_a Q^a d_ya,
/// where d_k Q^a = -sum_l M^a_lk x_l and M^a = A^T b^a + b^a A - sum_c C_ac b^c.
template <class Field>
Realization<Field> depth2_lift(const Field& field, const MatrixAlgebra<Field>& g0, const ModuleSpec<Field>& v,
                               const std::vector<DenseMatrix<Field>>& forms,
                               const std::optional<std::vector<std::uint32_t>>& heights = std::nullopt,
                               std::string seed = {}) {
  const std::size_t n = v.dim;
  const std::size_t r = forms.size();
  if (r == 0) fail(ErrorCode::FormDegenerate, "no form given");
  for (const auto& w : forms) {
    if (w.rows() != n || w.cols() != n) fail(ErrorCode::BadSize, "form size mismatch");
    if (!w.add(field, w.transpose(field), field.one()).is_zero(field)) {
      fail(ErrorCode::FormDegenerate, "form is not antisymmetric");
    }
  }
  const auto flat_forms = detail::flatten_all(forms);
  if (Subspace<Field>(field, n * n, flat_forms).dim() != r) fail(ErrorCode::FormDegenerate, "forms are dependent");
  const BasisSpan<Field> form_span(field, n * n, flat_forms);

  Realization<Field> out;
  out.depth = 2;
  out.seed = std::move(seed);
  auto& vars = out.vars;
  vars = Variables::standard(n + r, 0, field.characteristic(), heights);
  for (std::size_t a = 0; a < r; ++a) {
    vars.weights[n + a] = 2;
    vars.names[n + a] = r == 1 ? "t" : "y" + std::to_string(a + 1);
  }

  std::vector<DenseMatrix<Field>> beta;
  for (const auto& w : forms) {
    DenseMatrix<Field> b(field, n, n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = k + 1; i < n; ++i) b(k, i) = w(k, i);
    }
    beta.push_back(std::move(b));
  }
  auto x_mono = [&](std::size_t k) {
    Monomial m = Monomial::unit(vars);
    m.exps[k] = 1;
    return m;
  };
  using Term = typename FieldSum<Field>::Term;

  auto& m2 = out.components[-2];
  for (std::size_t a = 0; a < r; ++a) m2.push_back(FieldSum<Field>::partial(field, vars, n + a));
  auto& m1 = out.components[-1];
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Term> t;
    t.emplace_back(FieldKey{static_cast<std::uint32_t>(i), Monomial::unit(vars)}, field.one());
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!field.is_zero(beta[a](k, i))) t.emplace_back(FieldKey{static_cast<std::uint32_t>(n + a), x_mono(k)}, beta[a](k, i));
      }
    }
    m1.push_back(FieldSum<Field>::from_terms(field, std::move(t)));
  }

  auto& zero = out.components[0];
  for (std::size_t idx = 0; idx < v.action.size(); ++idx) {
    const auto& a = v.action[idx];
    const auto at = a.transpose(field);
    // C_ac
    std::vector<Vector<Field>> c_rows;
    for (std::size_t s = 0; s < r; ++s) {
      const auto rhs = at.mul(field, forms[s]).add(field, forms[s].mul(field, a), field.one());
      auto c = form_span.coordinates(rhs.flatten());
      if (!c) fail(ErrorCode::NotConformal, "forms are not preserved up to scaling by " + g0.labels[idx]);
      c_rows.push_back(std::move(*c));
    }
    std::vector<Term> t = linear_field(field, vars, a).terms();
    for (std::size_t s = 0; s < r; ++s) {
      for (std::size_t b = 0; b < r; ++b) {
        if (!field.is_zero(c_rows[s][b])) {
          Monomial m = Monomial::unit(vars);
          m.exps[n + b] = 1;
          t.emplace_back(FieldKey{static_cast<std::uint32_t>(n + s), m}, field.neg(c_rows[s][b]));
        }
      }
      auto mm = at.mul(field, beta[s]).add(field, beta[s].mul(field, a), field.one());
      for (std::size_t c = 0; c < r; ++c) {
        if (!field.is_zero(c_rows[s][c])) mm = mm.add(field, beta[c], field.neg(c_rows[s][c]));
      }
      if (!mm.equal(field, mm.transpose(field))) fail(ErrorCode::Internal, "lift obstruction is not symmetric");
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = l; k < n; ++k) {
          if (field.is_zero(mm(l, k))) continue;
          Monomial m = Monomial::unit(vars);
          if (k == l) {
            m.exps[l] = 2;
          } else {
            m.exps[l] = 1;
            m.exps[k] = 1;
          }
          t.emplace_back(FieldKey{static_cast<std::uint32_t>(n + s), m}, field.neg(mm(l, k)));
        }
      }
    }
    zero.push_back(FieldSum<Field>::from_terms(field, std::move(t)));
  }
  if (!FieldSpan<Field>(field, zero).independent()) fail(ErrorCode::ActionMismatch, "module action is not faithful");
  check_embedding(field, vars, g0, zero);
  check_realization(field, out);
  return out;
}

/// Contact-type lift for a single invariant symplectic form (conformal under g0).
template <class Field>
Realization<Field> heisenberg_lift(const Field& field, const MatrixAlgebra<Field>& g0, const ModuleSpec<Field>& v,
                                   const DenseMatrix<Field>& form,
                                   const std::optional<std::vector<std::uint32_t>>& heights = std::nullopt,
                                   std::string seed = {}) {
  if (detail::dense_rank(field, form) != v.dim) {
    fail(ErrorCode::FormDegenerate, "symplectic form is degenerate");
  }
  return depth2_lift(field, g0, v, {form}, heights, std::move(seed));
}

/// First nondegenerate invariant antisymmetric form, or FormDegenerate.
template <class Field>
DenseMatrix<Field> symplectic_form(const Field& field, const ModuleSpec<Field>& v) {
  for (const auto& w : invariant_forms(field, v)) {
    if (detail::dense_rank(field, w) == v.dim) return w;
  }
  fail(ErrorCode::FormDegenerate, "no nondegenerate invariant form on " + v.kind);
}

/// Pairing forms w^a(s, t) = B(s, gamma_a t) on the even half-spin module of o(m), m = 2k with k odd,
/// where B is the Clifford-invariant pairing of complementary monomials. One form per basis vector e_a.
template <class Field>
std::vector<DenseMatrix<Field>> clifford_pairing_forms(const Field& field, std::size_t m) {
  if (m % 2 != 0 || (m / 2) % 2 != 1) fail(ErrorCode::IncompatibleKind, "pairing forms need o(2k) with k odd");
  if (field.characteristic() == 2) fail(ErrorCode::UnsupportedChar, "spinors need p != 2");
  std::size_t big_k = 0;
  const auto gamma = detail::clifford_generators(field, m, big_k);
  const std::size_t dim = std::size_t{1} << big_k, full = dim - 1;
  for (int eps : {1, -1}) {
    const auto e = field.from_int(eps);
    // unknown sigma_S with B(xi_S, xi_T) = sigma_S when T is the complement of S
    std::vector<typename Matrix<Field>::Entry> entries;
    std::size_t row = 0;
    for (const auto& g : gamma) {
      for (std::size_t s = 0; s < dim; ++s) {
        for (std::size_t t = 0; t < dim; ++t) {
          // B(g xi_S, xi_T) - eps B(xi_S, g xi_T)
          const auto lhs = g(full & ~t, s);
          const auto rhs = g(full & ~s, t);
          if (field.is_zero(lhs) && field.is_zero(rhs)) continue;
          entries.push_back({row, full & ~t, lhs});
          entries.push_back({row, s, field.neg(field.mul(e, rhs))});
          ++row;
        }
      }
    }
    const auto ns = nullspace(field, Matrix<Field>::from_entries(field, row, dim, std::move(entries)));
    if (ns.size() != 1) continue;
    const auto& sigma = ns[0];
    std::vector<std::size_t> even;
    for (std::size_t s = 0; s < dim; ++s) {
      if (std::popcount(s) % 2 == 0) even.push_back(s);
    }
    std::vector<DenseMatrix<Field>> out;
    for (const auto& g : gamma) {
      DenseMatrix<Field> w(field, even.size(), even.size());
      for (std::size_t i = 0; i < even.size(); ++i) {
        for (std::size_t j = 0; j < even.size(); ++j) w(i, j) = field.mul(sigma[even[i]], g(full & ~even[i], even[j]));
      }
      out.push_back(std::move(w));
    }
    return out;
  }
  fail(ErrorCode::Internal, "no Clifford-invariant pairing found");
}

}  // namespace modlie
