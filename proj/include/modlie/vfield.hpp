#pragma once

// Vector fields sum_i f_i d_i over O(m; N) (x) Lambda(n): the general vectorial
// Lie superalgebra W(m|n; N). Brackets are computed by coefficient calculus,
//
//   [f d_i, g d_j] = f d_i(g) d_j - (-1)^{|f d_i||g d_j|} g d_j(f) d_i,
//
// never through operator matrices.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modlie/dpoly.hpp"
#include "modlie/error.hpp"
#include "modlie/linalg.hpp"

namespace modlie {

/// Coordinate of a monomial field m d_dir; ordered by direction, then monomial.
struct FieldKey {
  std::uint32_t dir = 0;
  Monomial mono;

  std::strong_ordering operator<=>(const FieldKey& o) const {
    if (auto c = dir <=> o.dir; c != 0) return c;
    return mono <=> o.mono;
  }
  bool operator==(const FieldKey& o) const = default;
};

struct FieldKeyHash {
  std::size_t operator()(const FieldKey& k) const noexcept { return MonomialHash{}(k.mono) * 31u + k.dir; }
};

inline bool key_parity(const Variables& vars, const FieldKey& k) { return k.mono.parity() != vars.is_odd(k.dir); }

inline int key_degree(const Variables& vars, const FieldKey& k) {
  return k.mono.weighted_degree(vars) - vars.weights[k.dir];
}

/// Formal (possibly inhomogeneous) sum of monomial fields in canonical form.
template <class Field>
class FieldSum {
 public:
  using value_type = typename Field::value_type;
  using Term = std::pair<FieldKey, value_type>;

  FieldSum() = default;

  static FieldSum from_terms(const Field& field, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    FieldSum out;
    for (auto& t : terms) {
      if (!out.terms_.empty() && out.terms_.back().first == t.first) {
        out.terms_.back().second = field.add(out.terms_.back().second, t.second);
      } else {
        out.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(out.terms_, [&](const Term& t) { return field.is_zero(t.second); });
    return out;
  }

  static FieldSum monomial(const Field& field, Monomial m, std::size_t dir, value_type c) {
    std::vector<Term> t;
    t.emplace_back(FieldKey{static_cast<std::uint32_t>(dir), std::move(m)}, std::move(c));
    return from_terms(field, std::move(t));
  }

  /// sum_i f_i d_i from (direction, coefficient) pairs.
  static FieldSum from_coefficients(const Field& field, const std::vector<std::pair<std::size_t, DPoly<Field>>>& cs) {
    std::vector<Term> t;
    for (const auto& [dir, f] : cs) {
      for (const auto& [m, c] : f.terms()) t.emplace_back(FieldKey{static_cast<std::uint32_t>(dir), m}, c);
    }
    return from_terms(field, std::move(t));
  }

  /// d_dir
  static FieldSum partial(const Field& field, const Variables& vars, std::size_t dir) {
    return monomial(field, Monomial::unit(vars), dir, field.one());
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  DPoly<Field> coefficient(std::size_t dir) const {
    std::vector<typename DPoly<Field>::Term> t;
    for (const auto& [k, c] : terms_) {
      if (k.dir == dir) t.emplace_back(k.mono, c);
    }
    return DPoly<Field>(std::move(t));
  }

  /// Coefficient of a single key (zero when absent).
  value_type at(const Field& field, const FieldKey& key) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, const FieldKey& k) { return t.first < k; });
    if (it != terms_.end() && it->first == key) return it->second;
    return field.zero();
  }

  bool operator==(const FieldSum& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].first == o.terms_[i].first) || !(terms_[i].second == o.terms_[i].second)) return false;
    }
    return true;
  }

 private:
  std::vector<Term> terms_;
};

template <class Field>
FieldSum<Field> fs_add(const Field& field, const FieldSum<Field>& a, const FieldSum<Field>& b) {
  auto t = a.terms();
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return FieldSum<Field>::from_terms(field, std::move(t));
}

template <class Field>
FieldSum<Field> fs_scale(const Field& field, const FieldSum<Field>& a, const typename Field::value_type& s) {
  std::vector<typename FieldSum<Field>::Term> t;
  t.reserve(a.terms().size());
  for (const auto& [k, c] : a.terms()) t.emplace_back(k, field.mul(c, s));
  return FieldSum<Field>::from_terms(field, std::move(t));
}

template <class Field>
FieldSum<Field> fs_sub(const Field& field, const FieldSum<Field>& a, const FieldSum<Field>& b) {
  return fs_add(field, a, fs_scale(field, b, field.neg(field.one())));
}

/// sum_k c_k X_k
template <class Field>
FieldSum<Field> fs_combine(const Field& field, const std::vector<FieldSum<Field>>& xs, const Vector<Field>& cs) {
  std::vector<typename FieldSum<Field>::Term> t;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (field.is_zero(cs[i])) continue;
    for (const auto& [k, c] : xs[i].terms()) t.emplace_back(k, field.mul(c, cs[i]));
  }
  return FieldSum<Field>::from_terms(field, std::move(t));
}

/// Parity of a homogeneous sum; nullopt for zero or mixed parity.
template <class Field>
std::optional<bool> fs_parity(const Variables& vars, const FieldSum<Field>& x) {
  if (x.is_zero()) return std::nullopt;
  const bool p = key_parity(vars, x.terms().front().first);
  for (const auto& [k, c] : x.terms()) {
    if (key_parity(vars, k) != p) return std::nullopt;
  }
  return p;
}

/// deg_w(f d_i) = deg_w(f) - w_i. Throws NotHomogeneous naming the offending pair.
template <class Field>
int weight_grade(const Variables& vars, const FieldSum<Field>& x, const std::vector<int>& weights) {
  if (weights.size() != vars.size()) fail(ErrorCode::BadSize, "weight vector length mismatch");
  Variables v = vars;
  v.weights = weights;
  std::optional<int> deg;
  const FieldKey* first = nullptr;
  for (const auto& [k, c] : x.terms()) {
    const int d = key_degree(v, k);
    if (!deg) {
      deg = d;
      first = &k;
    } else if (*deg != d) {
      fail(ErrorCode::NotHomogeneous, "terms " + render_monomial(vars, first->mono) + " d" + vars.names[first->dir] +
                                          " (degree " + std::to_string(*deg) + ") and " + render_monomial(vars, k.mono) +
                                          " d" + vars.names[k.dir] + " (degree " + std::to_string(d) + ")");
    }
  }
  if (!deg) fail(ErrorCode::NotHomogeneous, "zero field has no degree");
  return *deg;
}

template <class Field>
int weight_grade(const Variables& vars, const FieldSum<Field>& x) {
  return weight_grade(vars, x, vars.weights);
}

/// X(g) = sum_i f_i d_i(g)
template <class Field>
DPoly<Field> vf_apply(const Field& field, const Variables& vars, const FieldSum<Field>& x, const DPoly<Field>& g) {
  std::vector<typename DPoly<Field>::Term> out;
  for (const auto& [k, c] : x.terms()) {
    for (const auto& [m, cg] : g.terms()) {
      auto d = monomial_derive(field, vars, k.dir, m);
      if (!d) continue;
      auto prod = monomial_mul(field, vars, k.mono, d->mono);
      if (!prod) continue;
      out.emplace_back(std::move(prod->mono), field.mul(field.mul(c, cg), field.mul(d->coef, prod->coef)));
    }
  }
  return DPoly<Field>::from_terms(field, std::move(out));
}

namespace detail {

/// Appends [c1 m1 d_i, c2 m2 d_j] to out.
template <class Field>
void bracket_terms(const Field& field, const Variables& vars, const typename FieldSum<Field>::Term& s,
                   const typename FieldSum<Field>::Term& t, std::vector<typename FieldSum<Field>::Term>& out) {
  const auto c = field.mul(s.second, t.second);
  // m1 d_i(m2) d_j
  if (auto d = monomial_derive(field, vars, s.first.dir, t.first.mono)) {
    if (auto prod = monomial_mul(field, vars, s.first.mono, d->mono)) {
      out.emplace_back(FieldKey{t.first.dir, std::move(prod->mono)}, field.mul(c, field.mul(d->coef, prod->coef)));
    }
  }
  // - (-1)^{|s||t|} m2 d_j(m1) d_i
  if (auto d = monomial_derive(field, vars, t.first.dir, s.first.mono)) {
    if (auto prod = monomial_mul(field, vars, t.first.mono, d->mono)) {
      const bool both_odd = key_parity(vars, s.first) && key_parity(vars, t.first);
      auto v = field.mul(c, field.mul(d->coef, prod->coef));
      if (!both_odd) v = field.neg(v);
      out.emplace_back(FieldKey{s.first.dir, std::move(prod->mono)}, std::move(v));
    }
  }
}

}  // namespace detail

/// Super bracket [X, Y] = X o Y - (-1)^{p(X)p(Y)} Y o X, bilinear over terms.
template <class Field>
FieldSum<Field> vf_bracket(const Field& field, const Variables& vars, const FieldSum<Field>& x,
                           const FieldSum<Field>& y) {
  std::vector<typename FieldSum<Field>::Term> out;
  for (const auto& s : x.terms()) {
    for (const auto& t : y.terms()) detail::bracket_terms(field, vars, s, t, out);
  }
  return FieldSum<Field>::from_terms(field, std::move(out));
}

/// X^2 = X o X for an odd field in characteristic 2; equals sum_j X(f_j) d_j.
template <class Field>
FieldSum<Field> vf_square(const Field& field, const Variables& vars, const FieldSum<Field>& x) {
  if (field.characteristic() != 2) fail(ErrorCode::WrongChar, "squaring is defined for p = 2 only");
  if (x.is_zero()) return x;
  const auto par = fs_parity(vars, x);
  if (!par || !*par) fail(ErrorCode::NotOdd, "squaring requires an odd field");
  std::vector<typename FieldSum<Field>::Term> out;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const auto f = x.coefficient(j);
    if (f.is_zero()) continue;
    const auto xf = vf_apply(field, vars, x, f);
    for (const auto& [m, c] : xf.terms()) {
      out.emplace_back(FieldKey{static_cast<std::uint32_t>(j), m}, c);
    }
  }
  return FieldSum<Field>::from_terms(field, std::move(out));
}

/// Homogeneous vector field: fixed parity and weight degree.
template <class Field>
class VectorField {
 public:
  VectorField() = default;

  /// Throws NotHomogeneous when parity or degree varies across terms.
  static VectorField make(const Variables& vars, FieldSum<Field> sum) {
    VectorField v;
    if (!sum.is_zero()) {
      const auto par = fs_parity(vars, sum);
      if (!par) fail(ErrorCode::NotHomogeneous, "mixed parity field");
      v.parity_ = *par;
      v.degree_ = weight_grade(vars, sum);
    }
    v.sum_ = std::move(sum);
    return v;
  }

  const FieldSum<Field>& sum() const noexcept { return sum_; }
  bool parity() const noexcept { return parity_; }
  std::optional<int> degree() const noexcept { return sum_.is_zero() ? std::nullopt : std::optional<int>(degree_); }
  bool is_zero() const noexcept { return sum_.is_zero(); }

 private:
  FieldSum<Field> sum_;
  bool parity_ = false;
  int degree_ = 0;
};

template <class Field>
VectorField<Field> vf_bracket(const Field& field, const Variables& vars, const VectorField<Field>& x,
                              const VectorField<Field>& y) {
  return VectorField<Field>::make(vars, vf_bracket(field, vars, x.sum(), y.sum()));
}

template <class Field>
VectorField<Field> vf_square(const Field& field, const Variables& vars, const VectorField<Field>& x) {
  return VectorField<Field>::make(vars, vf_square(field, vars, x.sum()));
}

/// "x1^(2) ∂x1 + 3 xi1 ∂x2"; zero renders as "0".
template <class Field>
std::string render_field(const Field& field, const Variables& vars, const FieldSum<Field>& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : x.terms()) {
    if (!out.empty()) out += " + ";
    if (!field.is_one(c)) out += field.to_string(c) + " ";
    const auto mono = render_monomial(vars, k.mono);
    if (mono != "1") out += mono + " ";
    out += "∂" + vars.names[k.dir];
  }
  return out;
}

template <class Field>
FieldSum<Field> parse_field(const Field& field, const Variables& vars, std::string_view text) {
  const std::string s(text);
  if (detail::split_ws(s) == std::vector<std::string>{"0"}) return FieldSum<Field>();
  const std::string partial = "∂";
  std::vector<typename FieldSum<Field>::Term> terms;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(" + ", pos);
    auto tokens = detail::split_ws(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (tokens.empty() || tokens.back().rfind(partial, 0) != 0) {
      fail(ErrorCode::InvalidInput, "field term must end in a derivation: '" + s + "'");
    }
    const std::size_t dir = vars.index_of(tokens.back().substr(partial.size()));
    tokens.pop_back();
    auto coef = field.one();
    if (!tokens.empty() && detail::looks_like_scalar(tokens.front()) && tokens.front() != "1") {
      coef = field.parse(tokens.front());
      tokens.erase(tokens.begin());
    }
    terms.emplace_back(FieldKey{static_cast<std::uint32_t>(dir), parse_monomial_tokens(vars, tokens)}, coef);
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return FieldSum<Field>::from_terms(field, std::move(terms));
}

/// Span of a list of fields, kept in reduced echelon form over field keys so
/// that membership, residues and coordinates (w.r.t. the given list) are cheap.
template <class Field>
class FieldSpan {
 public:
  using value_type = typename Field::value_type;

  FieldSpan() = default;

  /// Dependent members are tolerated; coordinates then refer to an independent subset.
  FieldSpan(const Field& field, std::vector<FieldSum<Field>> basis) : field_(&field), basis_(std::move(basis)) {
    std::map<FieldKey, std::size_t> index;
    for (const auto& b : basis_) {
      for (const auto& [k, c] : b.terms()) index.emplace(k, 0);
    }
    std::vector<FieldKey> keys;
    keys.reserve(index.size());
    for (auto& [k, i] : index) {
      i = keys.size();
      keys.push_back(k);
    }
    const std::size_t nk = keys.size();
    std::vector<typename Matrix<Field>::Entry> entries;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      for (const auto& [k, c] : basis_[r].terms()) entries.push_back({r, index[k], c});
      entries.push_back({r, nk + r, field.one()});
    }
    const auto e = rref(field, Matrix<Field>::from_entries(field, basis_.size(), nk + basis_.size(), entries));
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      if (e.pivots[i] >= nk) continue;  // dependency row
      std::vector<typename FieldSum<Field>::Term> row;
      SparseVector<Field> combo;
      for (const auto& [c, v] : e.rows[i]) {
        if (c < nk) {
          row.emplace_back(keys[c], v);
        } else {
          combo.emplace_back(c - nk, v);
        }
      }
      pivot_index_.emplace(keys[e.pivots[i]], pivot_keys_.size());
      pivot_keys_.push_back(keys[e.pivots[i]]);
      rows_.push_back(FieldSum<Field>::from_terms(field, std::move(row)));
      combos_.push_back(std::move(combo));
    }
  }

  const std::vector<FieldSum<Field>>& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<FieldKey>& pivot_keys() const noexcept { return pivot_keys_; }
  const std::vector<FieldSum<Field>>& echelon_rows() const noexcept { return rows_; }

  /// v minus its component along the pivot keys; zero iff v is in the span.
  FieldSum<Field> residue(const FieldSum<Field>& v) const {
    std::vector<typename FieldSum<Field>::Term> t = v.terms();
    for (const auto& [k, c] : v.terms()) {
      auto it = pivot_index_.find(k);
      if (it == pivot_index_.end()) continue;
      const auto f = field_->neg(c);
      for (const auto& [rk, rc] : rows_[it->second].terms()) t.emplace_back(rk, field_->mul(f, rc));
    }
    return FieldSum<Field>::from_terms(*field_, std::move(t));
  }

  bool contains(const FieldSum<Field>& v) const { return residue(v).is_zero(); }

  /// Coordinates with respect to basis(); nullopt when v is outside the span.
  std::optional<Vector<Field>> coordinates(const FieldSum<Field>& v) const {
    if (!contains(v)) return std::nullopt;
    Vector<Field> out(basis_.size(), field_->zero());
    for (const auto& [k, c] : v.terms()) {
      auto it = pivot_index_.find(k);
      if (it == pivot_index_.end()) continue;
      for (const auto& [b, w] : combos_[it->second]) out[b] = field_->fma(out[b], c, w);
    }
    return out;
  }

  bool independent() const noexcept { return rows_.size() == basis_.size(); }

 private:
  const Field* field_ = nullptr;
  std::vector<FieldSum<Field>> basis_;
  std::vector<FieldKey> pivot_keys_;
  std::unordered_map<FieldKey, std::size_t, FieldKeyHash> pivot_index_;
  std::vector<FieldSum<Field>> rows_;
  std::vector<SparseVector<Field>> combos_;
};

/// Result of closure_check: ok, or the first violating pair of degrees and the witness.
template <class Field>
struct ClosureReport {
  bool ok = true;
  int i = 0;
  int j = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  bool square = false;
  FieldSum<Field> witness;
};

/// Verifies [g_i, g_j] in g_{i+j} for all computed pairs (and X^2 in g_{2i} for odd X at p = 2).
/// Pairs whose target degree lies above the largest computed degree are skipped; targets
/// below the smallest degree must vanish.
template <class Field>
ClosureReport<Field> closure_check(const Field& field, const Variables& vars,
                                   const std::map<int, std::vector<FieldSum<Field>>>& components) {
  ClosureReport<Field> report;
  if (components.empty()) return report;
  const int lo = components.begin()->first;
  const int hi = components.rbegin()->first;
  std::map<int, FieldSpan<Field>> spans;
  for (const auto& [d, basis] : components) spans.emplace(d, FieldSpan<Field>(field, basis));

  auto check = [&](int i, int j, std::size_t a, std::size_t b, const FieldSum<Field>& v, bool sq) {
    const int target = i + j;
    if (target > hi) return true;
    bool inside = v.is_zero();
    if (!inside && target >= lo) {
      auto it = spans.find(target);
      inside = it != spans.end() && it->second.contains(v);
    }
    if (!inside) {
      report = ClosureReport<Field>{false, i, j, a, b, sq, v};
      return false;
    }
    return true;
  };

  for (auto it = components.begin(); it != components.end(); ++it) {
    for (auto jt = it; jt != components.end(); ++jt) {
      const auto& xs = it->second;
      const auto& ys = jt->second;
      for (std::size_t a = 0; a < xs.size(); ++a) {
        for (std::size_t b = (it == jt ? a : 0); b < ys.size(); ++b) {
          if (!check(it->first, jt->first, a, b, vf_bracket(field, vars, xs[a], ys[b]), false)) return report;
        }
      }
    }
  }
  if (field.characteristic() == 2) {
    for (const auto& [d, xs] : components) {
      for (std::size_t a = 0; a < xs.size(); ++a) {
        const auto par = fs_parity(vars, xs[a]);
        if (par && *par && !check(d, d, a, a, vf_square(field, vars, xs[a]), true)) return report;
      }
    }
  }
  return report;
}

}  // namespace modlie
