#pragma once

// Lie (super)algebras given by structure constants.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modlie/error.hpp"
#include "modlie/linalg.hpp"
#include "modlie/prolong.hpp"
#include "modlie/seeds.hpp"
#include "modlie/submodule.hpp"

namespace modlie {

struct BasisLabel {
  std::string name;
  bool odd = false;
  int degree = 0;
  bool operator==(const BasisLabel&) const = default;
};

/// Brackets [e_i, e_j] are stored for i <= j; [e_j, e_i] = -(-1)^{|i||j|} [e_i, e_j].
/// At p = 2 the self-bracket of an odd element is zero and squares are stored separately.
template <class Field>
class SCAlgebra {
 public:
  using value_type = typename Field::value_type;
  using Coeffs = SparseVector<Field>;

  SCAlgebra(Field field, std::vector<BasisLabel> basis)
      : field_(std::move(field)), basis_(std::move(basis)), table_(basis_.size() * (basis_.size() + 1) / 2),
        squares_(basis_.size()) {}

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<BasisLabel>& basis() const noexcept { return basis_; }
  bool is_odd(std::size_t i) const { return basis_[i].odd; }
  bool has_odd() const {
    return std::any_of(basis_.begin(), basis_.end(), [](const auto& b) { return b.odd; });
  }
  std::size_t dim_odd() const {
    return static_cast<std::size_t>(std::count_if(basis_.begin(), basis_.end(), [](const auto& b) { return b.odd; }));
  }
  std::size_t dim_even() const { return dim() - dim_odd(); }
  bool char2() const { return field_.characteristic() == 2; }

  void set_bracket(std::size_t i, std::size_t j, Coeffs c) {
    check_index(i);
    check_index(j);
    normalize(c);
    if (i > j) {
      if (!(is_odd(i) && is_odd(j))) c = negate(c);
      std::swap(i, j);
    }
    table_[slot(i, j)] = std::move(c);
  }

  Coeffs bracket(std::size_t i, std::size_t j) const {
    if (i <= j) return table_[slot(i, j)];
    const auto& c = table_[slot(j, i)];
    return is_odd(i) && is_odd(j) ? c : negate(c);
  }

  void set_square(std::size_t i, Coeffs c) {
    check_index(i);
    normalize(c);
    squares_[i] = std::move(c);
  }
  const Coeffs& square(std::size_t i) const { return squares_[i]; }
  bool has_squares() const {
    return std::any_of(squares_.begin(), squares_.end(), [](const auto& s) { return !s.empty(); });
  }

  Vector<Field> unit(std::size_t i) const {
    Vector<Field> v(dim(), field_.zero());
    v[i] = field_.one();
    return v;
  }

  Vector<Field> bracket(const Vector<Field>& x, const Vector<Field>& y) const {
    Vector<Field> out(dim(), field_.zero());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (field_.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (field_.is_zero(y[j])) continue;
        const auto s = field_.mul(x[i], y[j]);
        for (const auto& [k, c] : bracket(i, j)) out[k] = field_.fma(out[k], s, c);
      }
    }
    return out;
  }

  /// x^2 for an odd x at p = 2: sum c_i^2 s_i + sum_{i<j} c_i c_j [e_i, e_j].
  Vector<Field> square(const Vector<Field>& x) const {
    Vector<Field> out(dim(), field_.zero());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (field_.is_zero(x[i])) continue;
      const auto ci2 = field_.mul(x[i], x[i]);
      for (const auto& [k, c] : squares_[i]) out[k] = field_.fma(out[k], ci2, c);
      for (std::size_t j = i + 1; j < dim(); ++j) {
        if (field_.is_zero(x[j])) continue;
        const auto s = field_.mul(x[i], x[j]);
        for (const auto& [k, c] : table_[slot(i, j)]) out[k] = field_.fma(out[k], s, c);
      }
    }
    return out;
  }

  /// ad(e_i) with columns [e_i, e_j].
  Matrix<Field> ad(std::size_t i) const {
    std::vector<typename Matrix<Field>::Entry> e;
    for (std::size_t j = 0; j < dim(); ++j) {
      for (const auto& [k, c] : bracket(i, j)) e.push_back({k, j, c});
    }
    return Matrix<Field>::from_entries(field_, dim(), dim(), std::move(e));
  }

  Matrix<Field> ad(const Vector<Field>& x) const {
    std::vector<typename Matrix<Field>::Entry> e;
    for (std::size_t j = 0; j < dim(); ++j) {
      const auto col = bracket(x, unit(j));
      for (std::size_t k = 0; k < dim(); ++k) {
        if (!field_.is_zero(col[k])) e.push_back({k, j, col[k]});
      }
    }
    return Matrix<Field>::from_entries(field_, dim(), dim(), std::move(e));
  }

  /// Structure identical: same labels, brackets and squares.
  bool operator==(const SCAlgebra& o) const {
    if (basis_ != o.basis_) return false;
    auto same = [&](const Coeffs& a, const Coeffs& b) {
      if (a.size() != b.size()) return false;
      for (std::size_t t = 0; t < a.size(); ++t) {
        if (a[t].first != b[t].first || !field_.equal(a[t].second, b[t].second)) return false;
      }
      return true;
    };
    for (std::size_t t = 0; t < table_.size(); ++t) {
      if (!same(table_[t], o.table_[t])) return false;
    }
    for (std::size_t t = 0; t < squares_.size(); ++t) {
      if (!same(squares_[t], o.squares_[t])) return false;
    }
    return true;
  }

 private:
  std::size_t slot(std::size_t i, std::size_t j) const { return j * (j + 1) / 2 + i; }
  void check_index(std::size_t i) const {
    if (i >= dim()) fail(ErrorCode::BadSize, "basis index " + std::to_string(i) + " out of range");
  }
  void normalize(Coeffs& c) const {
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Coeffs out;
    for (auto& [k, v] : c) {
      check_index(k);
      if (!out.empty() && out.back().first == k) {
        out.back().second = field_.add(out.back().second, v);
      } else {
        out.emplace_back(k, v);
      }
    }
    std::erase_if(out, [&](const auto& t) { return field_.is_zero(t.second); });
    c = std::move(out);
  }
  Coeffs negate(Coeffs c) const {
    for (auto& [k, v] : c) v = field_.neg(v);
    return c;
  }

  Field field_;
  std::vector<BasisLabel> basis_;
  std::vector<Coeffs> table_;
  std::vector<Coeffs> squares_;
};

// ---------------------------------------------------------------------------
// Constructors

template <class Field>
SCAlgebra<Field> from_matrix_algebra(const Field& field, const MatrixAlgebra<Field>& m) {
  std::vector<BasisLabel> labels;
  for (const auto& l : m.labels) labels.push_back({l, false, 0});
  SCAlgebra<Field> a(field, labels);
  const BasisSpan<Field> span(field, m.n * m.n, detail::flatten_all(m.basis));
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i + 1; j < m.dim(); ++j) {
      const auto c = span.coordinates(m.basis[i].commutator(field, m.basis[j]).flatten());
      if (!c) fail(ErrorCode::NotClosed, "matrix span not closed under commutators");
      a.set_bracket(i, j, to_sparse(field, *c));
    }
  }
  return a;
}

/// Structure constants of a finite graded prolong in the basis of its components.
/// With `truncate`, brackets landing above the computed degrees are dropped instead of rejected.
template <class Field>
SCAlgebra<Field> from_fields(const Field& field, const GradedProlong<Field>& P, bool truncate = false) {
  std::vector<BasisLabel> labels;
  std::vector<FieldSum<Field>> all;
  std::map<int, std::size_t> offset;
  for (const auto& [k, xs] : P.components) {
    offset[k] = all.size();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto par = fs_parity(P.vars, xs[i]);
      labels.push_back({"g" + std::to_string(k) + "_" + std::to_string(i + 1), par.value_or(false), k});
      all.push_back(xs[i]);
    }
  }
  std::map<int, FieldSpan<Field>> spans;
  for (const auto& [k, xs] : P.components) spans.emplace(k, FieldSpan<Field>(field, xs));
  SCAlgebra<Field> a(field, labels);
  auto express = [&](const FieldSum<Field>& v, int target, std::size_t i, std::size_t j) {
    typename SCAlgebra<Field>::Coeffs out;
    if (v.is_zero()) return out;
    auto it = spans.find(target);
    std::optional<Vector<Field>> c;
    if (it != spans.end()) c = it->second.coordinates(v);
    if (!c) {
      if (truncate && target > P.max_degree) return out;
      fail(ErrorCode::NotClosed, "[" + labels[i].name + ", " + labels[j].name + "] leaves the computed components");
    }
    for (std::size_t t = 0; t < c->size(); ++t) {
      if (!field.is_zero((*c)[t])) out.emplace_back(offset.at(target) + t, (*c)[t]);
    }
    return out;
  };
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i; j < all.size(); ++j) {
      if (i == j && (!labels[i].odd || field.characteristic() == 2)) continue;
      const auto v = vf_bracket(field, P.vars, all[i], all[j]);
      a.set_bracket(i, j, express(v, labels[i].degree + labels[j].degree, i, j));
    }
  }
  if (field.characteristic() == 2) {
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (labels[i].odd) a.set_square(i, express(vf_square(field, P.vars, all[i]), 2 * labels[i].degree, i, i));
    }
  }
  return a;
}

/// Algebra in a new basis given by rows (old coordinates); labels supplied or derived.
template <class Field>
SCAlgebra<Field> change_basis(const SCAlgebra<Field>& a, const std::vector<Vector<Field>>& rows,
                              std::optional<std::vector<BasisLabel>> labels = std::nullopt) {
  const auto& field = a.field();
  const BasisSpan<Field> span(field, a.dim(), rows);
  if (!labels) {
    labels.emplace();
    for (const auto& r : rows) {
      std::string name;
      std::optional<bool> odd;
      int degree = 0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (field.is_zero(r[i])) continue;
        if (!name.empty()) name += "+";
        if (!field.equal(r[i], field.one())) name += field.to_string(r[i]) + "*";
        name += a.basis()[i].name;
        if (odd && *odd != a.is_odd(i)) fail(ErrorCode::NotHomogeneous, "basis vector mixes parities");
        if (!odd) degree = a.basis()[i].degree;
        odd = a.is_odd(i);
      }
      labels->push_back({name, odd.value_or(false), degree});
    }
  }
  SCAlgebra<Field> out(field, *labels);
  auto coords = [&](const Vector<Field>& v) {
    const auto c = span.coordinates(v);
    if (!c) fail(ErrorCode::NotClosed, "span is not closed under the bracket");
    return to_sparse(field, *c);
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i; j < rows.size(); ++j) {
      if (i == j && (!(*labels)[i].odd || a.char2())) continue;
      out.set_bracket(i, j, coords(a.bracket(rows[i], rows[j])));
    }
    if (a.char2() && (*labels)[i].odd) out.set_square(i, coords(a.square(rows[i])));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Axioms

struct AxiomReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::size_t checked = 0;
};

template <class Field>
AxiomReport verify_axioms(const SCAlgebra<Field>& a, std::size_t max_violations = 20) {
  const auto& field = a.field();
  const std::size_t n = a.dim();
  const bool p2 = a.char2();
  AxiomReport rep;
  auto name = [&](std::size_t i) { return a.basis()[i].name; };
  auto violate = [&](const std::string& what) {
    rep.ok = false;
    if (rep.violations.size() < max_violations) rep.violations.push_back(what);
  };
  auto parity_ok = [&](const Vector<Field>& v, bool odd) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!field.is_zero(v[k]) && a.is_odd(k) != odd) return false;
    }
    return true;
  };

  // parity of brackets and squares; self-brackets
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      ++rep.checked;
      const auto c = a.bracket(i, j);
      if (i == j && !c.empty() && (!a.is_odd(i) || p2)) {
        violate("anticommutativity: [" + name(i) + ", " + name(i) + "] != 0");
      }
      for (const auto& [k, v] : c) {
        if (a.is_odd(k) != (a.is_odd(i) != a.is_odd(j))) {
          violate("parity: [" + name(i) + ", " + name(j) + "] has a component along " + name(k));
          break;
        }
      }
    }
    if (!a.square(i).empty()) {
      if (!p2 || !a.is_odd(i)) {
        violate("squaring: square of " + name(i) + " given outside p = 2 odd elements");
      } else if (!parity_ok(to_dense(field, a.square(i), n), false)) {
        violate("squaring: square of " + name(i) + " is not even");
      }
    }
  }

  // cached ad matrices
  std::vector<Matrix<Field>> ad;
  for (std::size_t i = 0; i < n; ++i) ad.push_back(a.ad(i));
  auto apply_ad = [&](std::size_t i, const Vector<Field>& v) { return ad[i].apply(field, v); };

  // Jacobi: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]] on sorted triples
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto xy = to_dense(field, a.bracket(i, j), n);
      for (std::size_t k = j; k < n; ++k) {
        ++rep.checked;
        const auto ez = a.unit(k);
        const auto lhs = apply_ad(i, apply_ad(j, ez));
        auto rhs = a.bracket(xy, ez);
        auto second = apply_ad(j, apply_ad(i, ez));
        const bool sign = a.is_odd(i) && a.is_odd(j) && !p2;
        axpy(field, rhs, sign ? field.neg(field.one()) : field.one(), second);
        if (!std::equal(lhs.begin(), lhs.end(), rhs.begin(), [&](const auto& u, const auto& w) { return field.equal(u, w); })) {
          violate("Jacobi: (" + name(i) + ", " + name(j) + ", " + name(k) + ")");
        }
      }
    }
  }

  // p = 2: [x^2, y] = [x, [x, y]] for odd basis x
  if (p2) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!a.is_odd(i)) continue;
      const auto sq = to_dense(field, a.square(i), n);
      for (std::size_t j = 0; j < n; ++j) {
        ++rep.checked;
        const auto ej = a.unit(j);
        const auto lhs = a.bracket(sq, ej);
        const auto rhs = apply_ad(i, apply_ad(i, ej));
        if (!std::equal(lhs.begin(), lhs.end(), rhs.begin(), [&](const auto& u, const auto& w) { return field.equal(u, w); })) {
          violate("JI: [" + name(i) + "^2, " + name(j) + "] != [" + name(i) + ", [" + name(i) + ", " + name(j) + "]]");
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Ideals, quotients, cores

/// Subalgebra on the reduced echelon basis of a subspace (coordinates in a).
template <class Field>
SCAlgebra<Field> subalgebra(const SCAlgebra<Field>& a, const Subspace<Field>& s) {
  return change_basis(a, s.basis());
}

/// Quotient by an ideal; basis = basis vectors of a outside the pivot positions of the ideal.
template <class Field>
SCAlgebra<Field> quotient(const SCAlgebra<Field>& a, const Subspace<Field>& ideal) {
  const auto& field = a.field();
  std::vector<bool> pivot(a.dim(), false);
  for (const auto p : ideal.pivots()) pivot[p] = true;
  std::vector<std::size_t> keep;
  std::vector<std::size_t> index(a.dim(), 0);
  std::vector<BasisLabel> labels;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (pivot[i]) continue;
    index[i] = keep.size();
    keep.push_back(i);
    labels.push_back(a.basis()[i]);
  }
  SCAlgebra<Field> out(field, labels);
  auto reduce = [&](const Vector<Field>& v) {
    const auto r = ideal.reduce(v);
    typename SCAlgebra<Field>::Coeffs c;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (field.is_zero(r[i])) continue;
      if (pivot[i]) fail(ErrorCode::Internal, "reduction left a pivot coordinate");
      c.emplace_back(index[i], r[i]);
    }
    return c;
  };
  for (std::size_t s = 0; s < keep.size(); ++s) {
    for (std::size_t t = s; t < keep.size(); ++t) {
      if (s == t && (!labels[s].odd || a.char2())) continue;
      out.set_bracket(s, t, reduce(to_dense(field, a.bracket(keep[s], keep[t]), a.dim())));
    }
    if (a.char2() && labels[s].odd) out.set_square(s, reduce(to_dense(field, a.square(keep[s]), a.dim())));
  }
  return out;
}

template <class Field>
Subspace<Field> derived_subspace(const SCAlgebra<Field>& a) {
  const auto& field = a.field();
  std::vector<Vector<Field>> vs;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i; j < a.dim(); ++j) {
      const auto c = a.bracket(i, j);
      if (!c.empty()) vs.push_back(to_dense(field, c, a.dim()));
    }
    if (!a.square(i).empty()) vs.push_back(to_dense(field, a.square(i), a.dim()));
  }
  return Subspace<Field>(field, a.dim(), vs);
}

template <class Field>
Subspace<Field> center_subspace(const SCAlgebra<Field>& a) {
  const auto& field = a.field();
  const std::size_t n = a.dim();
  // rows (j, k), columns i: coefficient of e_k in [e_i, e_j]
  std::vector<typename Matrix<Field>::Entry> e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [k, c] : a.bracket(i, j)) e.push_back({j * n + k, i, c});
    }
  }
  return Subspace<Field>(field, n, nullspace(field, Matrix<Field>::from_entries(field, n * n, n, std::move(e))));
}

template <class Field>
std::pair<Subspace<Field>, Subspace<Field>> derived_and_center(const SCAlgebra<Field>& a) {
  return {derived_subspace(a), center_subspace(a)};
}

/// Repeat (derived subalgebra, quotient by center) until stable.
template <class Field>
SCAlgebra<Field> simple_core(SCAlgebra<Field> a) {
  while (true) {
    const std::size_t before = a.dim();
    const auto d = derived_subspace(a);
    if (d.dim() < a.dim()) a = subalgebra(a, d);
    const auto z = center_subspace(a);
    if (z.dim() > 0) a = quotient(a, z);
    if (a.dim() == before) return a;
  }
}

template <class Field>
struct SimplicityCertificate {
  bool simple = false;
  /// Proper nonzero ideal when not simple (empty for abelian / dim <= 1 cases).
  std::vector<Vector<Field>> ideal;
  std::string transcript;
};

/// Smallest ideal containing s that is closed under squares of odd elements (p = 2).
template <class Field>
Subspace<Field> ideal_closure(const SCAlgebra<Field>& a, const ModuleAction<Field>& adj, Subspace<Field> s) {
  const auto& field = a.field();
  s = spin(field, adj, s.basis());
  if (!a.char2() || !a.has_odd()) return s;
  while (true) {
    std::vector<Vector<Field>> more = s.basis();
    for (const auto& v : s.basis()) {
      bool odd = false;
      for (std::size_t i = 0; i < v.size(); ++i) odd = odd || (!field.is_zero(v[i]) && a.is_odd(i));
      if (odd) more.push_back(a.square(v));
    }
    auto next = spin(field, adj, more);
    if (next.dim() == s.dim()) return s;
    s = std::move(next);
  }
}

template <class Field>
SimplicityCertificate<Field> is_simple(const SCAlgebra<Field>& a, std::uint64_t seed = 1) {
  const auto& field = a.field();
  SimplicityCertificate<Field> cert;
  const std::size_t n = a.dim();
  if (n == 0) fail(ErrorCode::BadSize, "is_simple needs dim >= 1");
  if (n == 1) {
    cert.transcript = "dimension 1\n";
    return cert;
  }
  if (derived_subspace(a).dim() == 0) {
    cert.transcript = "abelian\n";
    return cert;
  }
  ModuleAction<Field> adj;
  adj.dim = n;
  for (std::size_t i = 0; i < n; ++i) adj.gens.push_back(a.ad(i));
  if (a.has_odd()) {
    // parity projection keeps ideals graded
    std::vector<typename Matrix<Field>::Entry> e;
    for (std::size_t i = 0; i < n; ++i) {
      if (!a.is_odd(i)) e.push_back({i, i, field.one()});
    }
    adj.gens.push_back(Matrix<Field>::from_entries(field, n, n, std::move(e)));
  }
  SearchOptions opt;
  opt.seed = seed;
  const auto res = find_submodule<Field>(field, adj, opt, [&](const Subspace<Field>& s) { return ideal_closure(a, adj, s); });
  cert.transcript = res.transcript;
  using Status = typename SearchResult<Field>::Status;
  if (res.status == Status::inconclusive) fail(ErrorCode::Inconclusive, "ideal search inconclusive:\n" + res.transcript);
  if (res.status == Status::found) {
    cert.ideal = res.sub.basis();
    return cert;
  }
  cert.simple = true;
  return cert;
}

// ---------------------------------------------------------------------------
// Regrading

namespace detail {

inline long long centered(const PrimeField& field, std::uint64_t x) {
  const auto p = field.characteristic();
  return x > p / 2 ? -static_cast<long long>(p - x) : static_cast<long long>(x);
}

inline long long integral_label(const PrimeField& field, std::uint64_t x) { return centered(field, x); }

inline long long integral_label(const RationalField&, const mpq_class& x) {
  if (x.get_den() != 1 || !x.get_num().fits_slong_p()) fail(ErrorCode::NonIntegralSpectrum, "eigenvalue " + x.get_str() + " is not an integer");
  return x.get_num().get_si();
}

}  // namespace detail

/// Eigenspace decomposition of ad h, labelled by integer representatives.
template <class Field>
std::map<long long, std::vector<Vector<Field>>> regrade(const SCAlgebra<Field>& a, const Vector<Field>& h) {
  const auto& field = a.field();
  const std::size_t n = a.dim();
  const auto adh = a.ad(h);
  const auto m = matrix_minpoly(field, adh, n);
  if (poly_gcd(field, m, poly_derivative(field, m)).size() > 1) {
    fail(ErrorCode::NotDiagonalizable, "ad h has a repeated eigenvalue factor");
  }
  std::mt19937_64 rng(7);
  const auto roots = poly_roots(field, m, rng);
  if (roots.size() + 1 != m.size()) fail(ErrorCode::NonIntegralSpectrum, "ad h has eigenvalues outside the field");
  std::map<long long, std::vector<Vector<Field>>> out;
  std::size_t total = 0;
  for (const auto& lambda : roots) {
    std::vector<typename Matrix<Field>::Entry> e(adh.entries().begin(), adh.entries().end());
    for (std::size_t i = 0; i < n; ++i) e.push_back({i, i, field.neg(lambda)});
    auto space = nullspace(field, Matrix<Field>::from_entries(field, n, n, std::move(e)));
    const long long label = detail::integral_label(field, lambda);
    if (out.count(label)) fail(ErrorCode::NonIntegralSpectrum, "eigenvalue labels collide");
    total += space.size();
    out[label] = std::move(space);
  }
  if (total != n) fail(ErrorCode::NotDiagonalizable, "eigenspaces do not span");
  return out;
}

/// The algebra in an eigenbasis of ad h, with degrees set to the eigenvalue labels.
template <class Field>
SCAlgebra<Field> regraded(const SCAlgebra<Field>& a, const std::map<long long, std::vector<Vector<Field>>>& grading) {
  std::vector<Vector<Field>> rows;
  std::vector<int> degrees;
  for (const auto& [k, vs] : grading) {
    for (const auto& v : vs) {
      rows.push_back(v);
      degrees.push_back(static_cast<int>(k));
    }
  }
  auto tmp = change_basis(a, rows);
  auto labels = tmp.basis();
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i].degree = degrees[i];
  return change_basis(a, rows, labels);
}

// ---------------------------------------------------------------------------
// Signature

struct Signature {
  std::size_t dim_even = 0;
  std::size_t dim_odd = 0;
  std::vector<std::size_t> derived_series;
  std::vector<std::size_t> lower_central_series;
  std::size_t center = 0;
  std::size_t killing_rank = 0;
  /// Degree -> dimension; reported, not compared (regrading changes it).
  std::map<int, std::size_t> graded_dims;

  bool operator==(const Signature& o) const {
    return dim_even == o.dim_even && dim_odd == o.dim_odd && derived_series == o.derived_series &&
           lower_central_series == o.lower_central_series && center == o.center && killing_rank == o.killing_rank;
  }

  std::string to_string() const {
    std::ostringstream s;
    auto list = [&](const std::vector<std::size_t>& v) {
      s << "(";
      for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
      s << ")";
    };
    s << "dim " << dim_even << "|" << dim_odd << " derived ";
    list(derived_series);
    s << " lcs ";
    list(lower_central_series);
    s << " center " << center << " killing-rank " << killing_rank << " graded";
    for (const auto& [k, d] : graded_dims) s << " " << k << ":" << d;
    return s.str();
  }
};

template <class Field>
Signature signature(const SCAlgebra<Field>& a) {
  const auto& field = a.field();
  const std::size_t n = a.dim();
  Signature sig;
  sig.dim_even = a.dim_even();
  sig.dim_odd = a.dim_odd();
  for (const auto& b : a.basis()) ++sig.graded_dims[b.degree];
  // derived series g^(k+1) = [g^(k), g^(k)]
  {
    Subspace<Field> cur(field, n, [&] {
      std::vector<Vector<Field>> all;
      for (std::size_t i = 0; i < n; ++i) all.push_back(a.unit(i));
      return all;
    }());
    sig.derived_series.push_back(cur.dim());
    while (cur.dim() > 0) {
      std::vector<Vector<Field>> vs;
      const auto& b = cur.basis();
      for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = i; j < b.size(); ++j) vs.push_back(a.bracket(b[i], b[j]));
        if (a.char2()) vs.push_back(a.square(b[i]));
      }
      Subspace<Field> next(field, n, vs);
      if (next.dim() == cur.dim()) break;
      cur = std::move(next);
      sig.derived_series.push_back(cur.dim());
    }
  }
  // lower central series g^{k+1} = [g, g^k]
  {
    std::vector<Vector<Field>> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(a.unit(i));
    Subspace<Field> cur(field, n, all);
    sig.lower_central_series.push_back(cur.dim());
    while (cur.dim() > 0) {
      std::vector<Vector<Field>> vs;
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& v : cur.basis()) vs.push_back(a.bracket(a.unit(i), v));
      }
      Subspace<Field> next(field, n, vs);
      if (next.dim() == cur.dim()) break;
      cur = std::move(next);
      sig.lower_central_series.push_back(cur.dim());
    }
  }
  sig.center = center_subspace(a).dim();
  // Killing form (super trace of ad x ad y)
  std::vector<DenseMatrix<Field>> ads;
  for (std::size_t i = 0; i < n; ++i) {
    DenseMatrix<Field> d(field, n, n);
    const auto adi = a.ad(i);
    for (const auto& e : adi.entries()) d(e.row, e.col) = e.value;
    ads.push_back(std::move(d));
  }
  std::vector<Vector<Field>> rows(n, Vector<Field>(n, field.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      auto tr = field.zero();
      for (std::size_t k = 0; k < n; ++k) {
        auto s = field.zero();
        for (std::size_t l = 0; l < n; ++l) s = field.fma(s, ads[i](k, l), ads[j](l, k));
        tr = a.is_odd(k) ? field.sub(tr, s) : field.add(tr, s);
      }
      rows[i][j] = tr;
      rows[j][i] = tr;
    }
  }
  sig.killing_rank = rank(field, Matrix<Field>::from_rows(field, n, rows));
  return sig;
}

}  // namespace modlie
