#pragma once

// Complete and partial prolongation inside W(m|n; N), degree by degree.

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "modlie/seeds.hpp"
#include "modlie/submodule.hpp"
#include "modlie/vfield.hpp"

namespace modlie {

template <class Field>
struct GradedProlong {
  Variables vars;
  int depth = 1;
  /// Degrees -depth..max computed; positive degrees hold canonical echelon bases.
  std::map<int, std::vector<FieldSum<Field>>> components;
  std::uint64_t p = 0;
  int max_degree = 0;
  std::string seed;
  bool terminated = false;
  std::vector<std::string> warnings;

  std::size_t dim(int k) const {
    auto it = components.find(k);
    return it == components.end() ? 0 : it->second.size();
  }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& [k, b] : components) s += b.size();
    return s;
  }
  /// "-1:3 0:4 1:3 2:0"
  std::string dims_table() const {
    std::string out;
    for (int k = -depth; k <= max_degree; ++k) {
      if (!out.empty()) out += ' ';
      out += std::to_string(k) + ":" + std::to_string(dim(k));
    }
    return out;
  }
};

struct ProlongOptions {
  /// Restrict each degree to torus weights that can carry solutions.
  bool prune = true;
  unsigned threads = 1;
  /// Candidate monomial fields held in memory at once (pruned mode).
  std::size_t chunk_keys = std::size_t{1} << 20;
};

namespace detail {

template <class Field>
using Weight = std::vector<typename Field::value_type>;

template <class Field>
struct WeightLess {
  const Field* field;
  bool operator()(const Weight<Field>& a, const Weight<Field>& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (field->less(a[i], b[i])) return true;
      if (field->less(b[i], a[i])) return false;
    }
    return false;
  }
};

/// Coefficients c_v of diagonal fields sum_v c_v x_v d_v spanning the diagonal part of g0.
template <class Field>
std::vector<std::vector<typename Field::value_type>> torus_of(const Field& field, const Variables& vars,
                                                              const std::vector<FieldSum<Field>>& g0) {
  auto is_diag = [&](const FieldKey& k) {
    if (k.mono.odd != (vars.is_odd(k.dir) ? (1ULL << (k.dir - vars.even)) : 0ULL)) return false;
    for (std::size_t i = 0; i < vars.even; ++i) {
      if (k.mono.exps[i] != (i == k.dir ? 1 : 0)) return false;
    }
    return true;
  };
  std::map<FieldKey, std::size_t> off;
  for (const auto& x : g0) {
    for (const auto& [k, c] : x.terms()) {
      if (!is_diag(k)) off.emplace(k, off.size());
    }
  }
  std::vector<typename Matrix<Field>::Entry> e;
  for (std::size_t j = 0; j < g0.size(); ++j) {
    for (const auto& [k, c] : g0[j].terms()) {
      if (!is_diag(k)) e.push_back({off[k], j, c});
    }
  }
  const auto combos = nullspace(field, Matrix<Field>::from_entries(field, off.size(), g0.size(), std::move(e)));
  std::vector<std::vector<typename Field::value_type>> out;
  for (const auto& c : combos) {
    const auto d = fs_combine(field, g0, c);
    std::vector<typename Field::value_type> coef(vars.size(), field.zero());
    for (const auto& [k, v] : d.terms()) coef[k.dir] = v;
    out.push_back(std::move(coef));
  }
  return out;
}

template <class Field>
Weight<Field> key_weight(const Field& field, const Variables& vars,
                         const std::vector<std::vector<typename Field::value_type>>& torus, const FieldKey& k) {
  Weight<Field> w;
  w.reserve(torus.size());
  for (const auto& c : torus) {
    auto acc = field.neg(c[k.dir]);
    for (std::size_t i = 0; i < vars.even; ++i) {
      if (k.mono.exps[i]) acc = field.fma(acc, field.from_uint(k.mono.exps[i]), c[i]);
    }
    for (std::size_t j = 0; j < vars.odd; ++j) {
      if (k.mono.odd >> j & 1ULL) acc = field.add(acc, c[vars.even + j]);
    }
    w.push_back(std::move(acc));
  }
  return w;
}

template <class Field>
std::vector<FieldKey> monomial_fields(const Variables& vars, int k) {
  std::vector<FieldKey> out;
  for (std::size_t u = 0; u < vars.size(); ++u) {
    for (auto& m : monomials_of_weight(vars, k + vars.weights[u])) {
      out.push_back(FieldKey{static_cast<std::uint32_t>(u), std::move(m)});
    }
  }
  return out;
}

/// Calls fn(u, w, m) for every monomial field m d_u of degree k whose torus weight w lies in
/// `allowed`. Monomials are enumerated depth first with running weights, so nothing is stored.
template <class Field, class Fn>
void for_each_weighted_field(const Field& field, const Variables& vars,
                             const std::vector<std::vector<typename Field::value_type>>& torus, int k,
                             const std::set<Weight<Field>, WeightLess<Field>>& allowed, Fn&& fn) {
  if (allowed.empty()) return;
  const WeightLess<Field> less{&field};
  const std::size_t r = torus.size();
  // monomial weight -> (direction, field weight) with field weight = monomial weight - c_u
  std::map<int, std::map<Weight<Field>, std::vector<std::pair<std::uint32_t, const Weight<Field>*>>, WeightLess<Field>>>
      targets;
  for (std::size_t u = 0; u < vars.size(); ++u) {
    auto& t = targets.try_emplace(k + vars.weights[u], less).first->second;
    for (const auto& a : allowed) {
      Weight<Field> m(r);
      for (std::size_t i = 0; i < r; ++i) m[i] = field.add(a[i], torus[i][u]);
      t[std::move(m)].emplace_back(static_cast<std::uint32_t>(u), &a);
    }
  }

  Monomial cur = Monomial::unit(vars);
  std::vector<Weight<Field>> acc(vars.even + 1, Weight<Field>(r, field.zero()));
  for (const auto& [degree, t] : targets) {
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == vars.even) {
        if (left != 0) return;
        const auto hit = t.find(acc[i]);
        if (hit == t.end()) return;
        for (const auto& [u, w] : hit->second) fn(u, *w, cur);
        return;
      }
      const int w = vars.weights[i];
      const auto bound = vars.max_exponent(i);
      acc[i + 1] = acc[i];
      for (int a = 0; a * w <= left; ++a) {
        if (bound && static_cast<std::uint64_t>(a) > *bound) break;
        if (a > 0) {
          for (std::size_t j = 0; j < r; ++j) acc[i + 1][j] = field.add(acc[i + 1][j], torus[j][i]);
        }
        cur.exps[i] = static_cast<std::uint16_t>(a);
        rec(i + 1, left - a * w);
      }
      cur.exps[i] = 0;
    };
    const std::uint64_t subsets = vars.odd >= 64 ? 0 : (1ULL << vars.odd);
    for (std::uint64_t s = 0; s < subsets; ++s) {
      int w = 0;
      Weight<Field> base(r, field.zero());
      for (std::size_t j = 0; j < vars.odd; ++j) {
        if (!(s >> j & 1ULL)) continue;
        w += vars.weights[vars.even + j];
        for (std::size_t q = 0; q < r; ++q) base[q] = field.add(base[q], torus[q][vars.even + j]);
      }
      if (w > degree) continue;
      cur.odd = s;
      acc[0] = std::move(base);
      rec(0, degree - w);
    }
    cur.odd = 0;
  }
}

/// Splits `allowed` into chunks whose buckets hold at most `budget` keys in total (a single
/// oversized bucket forms its own chunk). Empty buckets are dropped.
template <class Field>
std::vector<std::set<Weight<Field>, WeightLess<Field>>> weight_chunks(
    const Field& field, const Variables& vars, const std::vector<std::vector<typename Field::value_type>>& torus,
    int k, const std::set<Weight<Field>, WeightLess<Field>>& allowed, std::size_t budget) {
  const WeightLess<Field> less{&field};
  std::map<const Weight<Field>*, std::size_t> count;
  for_each_weighted_field(field, vars, torus, k, allowed,
                          [&](std::uint32_t, const Weight<Field>& w, const Monomial&) { ++count[&w]; });
  std::vector<std::set<Weight<Field>, WeightLess<Field>>> out;
  std::size_t used = budget;
  for (const auto& w : allowed) {
    const auto it = count.find(&w);
    if (it == count.end()) continue;
    if (used + it->second > budget || out.empty()) {
      out.emplace_back(less);
      used = 0;
    }
    out.back().insert(w);
    used += it->second;
  }
  return out;
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned t = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Solutions X in span(cols) of [X, b] in targets[deg(b)] for every constraint field b.
template <class Field>
std::vector<FieldSum<Field>> solve_bucket(const Field& field, const Variables& vars, const std::vector<FieldKey>& cols,
                                          const std::vector<std::pair<const FieldSum<Field>*, const FieldSpan<Field>*>>& cons) {
  std::map<std::pair<std::size_t, FieldKey>, std::size_t> rows;
  std::vector<typename Matrix<Field>::Entry> entries;
  std::vector<typename FieldSum<Field>::Term> buf;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const typename FieldSum<Field>::Term s{cols[j], field.one()};
    for (std::size_t b = 0; b < cons.size(); ++b) {
      buf.clear();
      for (const auto& t : cons[b].first->terms()) bracket_terms(field, vars, s, t, buf);
      if (buf.empty()) continue;
      const auto r = cons[b].second->residue(FieldSum<Field>::from_terms(field, buf));
      for (const auto& [k, c] : r.terms()) {
        const auto id = rows.emplace(std::make_pair(b, k), rows.size()).first->second;
        entries.push_back({id, j, c});
      }
    }
  }
  const auto ns = nullspace(field, Matrix<Field>::from_entries(field, rows.size(), cols.size(), std::move(entries)));
  std::vector<FieldSum<Field>> out;
  for (const auto& v : ns) {
    std::vector<typename FieldSum<Field>::Term> t;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!field.is_zero(v[j])) t.emplace_back(cols[j], v[j]);
    }
    out.push_back(FieldSum<Field>::from_terms(field, std::move(t)));
  }
  return out;
}

template <class Field>
std::vector<FieldSum<Field>> canonical_basis(const Field& field, std::vector<FieldSum<Field>> xs) {
  if (xs.empty()) return xs;
  return FieldSpan<Field>(field, std::move(xs)).echelon_rows();
}

}  // namespace detail

/// Computes g_1..g_D of the complete prolong of a realization.
template <class Field>
GradedProlong<Field> complete_prolong(const Field& field, const Realization<Field>& r, int max_degree,
                                      const ProlongOptions& opt = {}) {
  if (max_degree < 1) fail(ErrorCode::BadSize, "max degree must be at least 1");
  check_realization(field, r);
  GradedProlong<Field> P;
  P.vars = r.vars;
  P.depth = r.depth;
  P.components = r.components;
  P.p = field.characteristic();
  P.max_degree = max_degree;
  P.seed = r.seed;
  const auto& vars = P.vars;
  if (P.p != 0 && P.p <= static_cast<std::uint64_t>(max_degree) + 2) {
    P.warnings.push_back("TruncationWarning: p <= D + 2; dimensions reflect divided-power truncation");
  }

  const auto torus = detail::torus_of(field, vars, P.components.at(0));
  using W = detail::Weight<Field>;
  const detail::WeightLess<Field> less{&field};
  auto term_weights = [&](const std::vector<FieldSum<Field>>& xs) {
    std::set<W, detail::WeightLess<Field>> out(less);
    for (const auto& x : xs) {
      for (const auto& [k, c] : x.terms()) out.insert(detail::key_weight(field, vars, torus, k));
    }
    return out;
  };
  std::set<W, detail::WeightLess<Field>> neg1_weights = term_weights(P.components.at(-1));

  int zero_run = 0;
  for (int k = 1; k <= max_degree; ++k) {
    if (zero_run >= P.depth) {
      P.components[k] = {};
      continue;
    }
    std::map<int, FieldSpan<Field>> spans;
    for (int j = 1; j <= P.depth; ++j) spans.emplace(k - j, FieldSpan<Field>(field, P.components.at(k - j)));
    std::vector<std::pair<const FieldSum<Field>*, const FieldSpan<Field>*>> cons;
    for (int j = 1; j <= P.depth; ++j) {
      for (const auto& b : P.components.at(-j)) cons.emplace_back(&b, &spans.at(k - j));
    }

    std::set<W, detail::WeightLess<Field>> allowed(less);
    if (opt.prune) {
      for (const auto& a : term_weights(P.components.at(k - 1))) {
        for (const auto& b : neg1_weights) {
          W w(a.size());
          for (std::size_t i = 0; i < a.size(); ++i) w[i] = field.sub(a[i], b[i]);
          allowed.insert(std::move(w));
        }
      }
    }
    std::vector<FieldSum<Field>> gk;
    auto solve_all = [&](const std::map<W, std::vector<FieldKey>, detail::WeightLess<Field>>& buckets) {
      std::vector<const std::vector<FieldKey>*> jobs;
      for (const auto& [w, cols] : buckets) jobs.push_back(&cols);
      std::vector<std::vector<FieldSum<Field>>> results(jobs.size());
      detail::parallel_for(jobs.size(), opt.threads,
                           [&](std::size_t i) { results[i] = detail::solve_bucket(field, vars, *jobs[i], cons); });
      for (auto& r2 : results) {
        for (auto& x : r2) gk.push_back(std::move(x));
      }
    };
    if (opt.prune) {
      for (const auto& chunk : detail::weight_chunks(field, vars, torus, k, allowed, opt.chunk_keys)) {
        std::map<W, std::vector<FieldKey>, detail::WeightLess<Field>> buckets(less);
        detail::for_each_weighted_field(field, vars, torus, k, chunk,
                                        [&](std::uint32_t u, const W& w, const Monomial& m) {
                                          buckets.try_emplace(w).first->second.push_back(FieldKey{u, m});
                                        });
        for (auto& [w, keys] : buckets) std::sort(keys.begin(), keys.end());
        solve_all(buckets);
      }
    } else {
      std::map<W, std::vector<FieldKey>, detail::WeightLess<Field>> buckets(less);
      for (auto& key : detail::monomial_fields<Field>(vars, k)) {
        buckets[detail::key_weight(field, vars, torus, key)].push_back(std::move(key));
      }
      solve_all(buckets);
    }
    P.components[k] = detail::canonical_basis(field, std::move(gk));
    zero_run = P.components[k].empty() ? zero_run + 1 : 0;
  }
  P.terminated = zero_run >= P.depth;
  return P;
}

enum class PartialRule {
  /// h_k = span [h_1, h_{k-1}]
  generated,
  /// h_k = {X in g_k : [X, g_-1] in h_{k-1}}
  maximal,
};

/// Partial prolong determined by a g0-submodule h1 of g1.
template <class Field>
GradedProlong<Field> partial_prolong(const Field& field, const GradedProlong<Field>& P,
                                     const std::vector<FieldSum<Field>>& h1, int max_degree,
                                     PartialRule rule = PartialRule::generated) {
  if (max_degree < 1) fail(ErrorCode::BadSize, "max degree must be at least 1");
  const auto& vars = P.vars;
  if (P.components.count(1) == 0) fail(ErrorCode::BadSize, "g_1 has not been computed");
  const FieldSpan<Field> g1(field, P.components.at(1));
  for (const auto& x : h1) {
    if (!g1.contains(x)) fail(ErrorCode::NotSubmodule, "h1 is not contained in g_1");
  }
  GradedProlong<Field> H;
  H.vars = vars;
  H.depth = P.depth;
  H.p = P.p;
  H.max_degree = max_degree;
  H.seed = P.seed;
  H.warnings = P.warnings;
  for (int j = -P.depth; j <= 0; ++j) H.components[j] = P.components.at(j);
  H.components[1] = detail::canonical_basis(field, h1);
  {
    const FieldSpan<Field> hs(field, H.components[1]);
    for (const auto& a : P.components.at(0)) {
      for (const auto& x : H.components[1]) {
        if (!hs.contains(vf_bracket(field, vars, a, x))) fail(ErrorCode::NotSubmodule, "h1 is not g0-invariant");
      }
    }
  }

  int zero_run = H.components[1].empty() ? 1 : 0;
  for (int k = 2; k <= max_degree; ++k) {
    auto& prev = H.components.at(k - 1);
    std::vector<FieldSum<Field>> hk;
    if (zero_run >= H.depth || prev.empty()) {
      hk = {};
    } else if (rule == PartialRule::generated) {
      for (const auto& a : H.components.at(1)) {
        for (const auto& b : prev) {
          auto c = vf_bracket(field, vars, a, b);
          if (!c.is_zero()) hk.push_back(std::move(c));
        }
      }
      hk = detail::canonical_basis(field, std::move(hk));
    } else {
      if (P.components.count(k) == 0) fail(ErrorCode::BadSize, "complete prolong not computed to degree " + std::to_string(k));
      const auto& gk = P.components.at(k);
      const FieldSpan<Field> span(field, prev);
      std::map<std::pair<std::size_t, FieldKey>, std::size_t> rows;
      std::vector<typename Matrix<Field>::Entry> e;
      const auto& neg = P.components.at(-1);
      for (std::size_t i = 0; i < gk.size(); ++i) {
        for (std::size_t b = 0; b < neg.size(); ++b) {
          const auto res = span.residue(vf_bracket(field, vars, gk[i], neg[b]));
          for (const auto& [key, c] : res.terms()) {
            e.push_back({rows.emplace(std::make_pair(b, key), rows.size()).first->second, i, c});
          }
        }
      }
      for (const auto& v : nullspace(field, Matrix<Field>::from_entries(field, rows.size(), gk.size(), std::move(e)))) {
        hk.push_back(fs_combine(field, gk, v));
      }
      hk = detail::canonical_basis(field, std::move(hk));
    }
    zero_run = hk.empty() ? zero_run + 1 : 0;
    H.components[k] = std::move(hk);
  }
  H.terminated = zero_run >= H.depth;
  const auto report = closure_check(field, vars, H.components);
  if (!report.ok) {
    fail(ErrorCode::ClosureFailure, "partial prolong not closed: [g_" + std::to_string(report.i) + ", g_" +
                                        std::to_string(report.j) + "] witness " + render_field(field, vars, report.witness));
  }
  return H;
}

/// Action of g_0 on g_1 as matrices in the g_1 basis.
template <class Field>
ModuleAction<Field> g0_action_on(const Field& field, const Variables& vars, const std::vector<FieldSum<Field>>& g0,
                                 const std::vector<FieldSum<Field>>& basis) {
  const FieldSpan<Field> span(field, basis);
  ModuleAction<Field> a;
  a.dim = basis.size();
  for (const auto& x : g0) {
    std::vector<typename Matrix<Field>::Entry> e;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto c = span.coordinates(vf_bracket(field, vars, x, basis[j]));
      if (!c) fail(ErrorCode::NotSubmodule, "subspace is not g0-invariant");
      for (std::size_t i = 0; i < c->size(); ++i) {
        if (!field.is_zero((*c)[i])) e.push_back({i, j, (*c)[i]});
      }
    }
    a.gens.push_back(Matrix<Field>::from_entries(field, a.dim, a.dim, std::move(e)));
  }
  return a;
}

template <class Field>
struct G1Split {
  /// Irreducible parts (or filtration steps when not semisimple), sorted by dimension.
  std::vector<std::vector<FieldSum<Field>>> parts;
  bool semisimple = true;
  std::string transcript;
};

namespace detail {

/// Restriction of an action to an invariant subspace given by basis rows (coordinates in the ambient).
template <class Field>
ModuleAction<Field> restrict_action(const Field& field, const ModuleAction<Field>& a, const std::vector<Vector<Field>>& basis) {
  const BasisSpan<Field> span(field, a.dim, basis);
  ModuleAction<Field> out;
  out.dim = basis.size();
  for (const auto& g : a.gens) {
    std::vector<typename Matrix<Field>::Entry> e;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto c = span.coordinates(g.apply(field, basis[j]));
      if (!c) fail(ErrorCode::NotSubmodule, "subspace is not invariant");
      for (std::size_t i = 0; i < c->size(); ++i) {
        if (!field.is_zero((*c)[i])) e.push_back({i, j, (*c)[i]});
      }
    }
    out.gens.push_back(Matrix<Field>::from_entries(field, out.dim, out.dim, std::move(e)));
  }
  return out;
}

/// Invariant complement of invariant S in K^n (basis in ambient coordinates), if one exists.
/// Solves for an equivariant projection P: K^n -> S (S-coordinates) restricting to the identity on S.
template <class Field>
std::optional<std::vector<Vector<Field>>> invariant_complement(const Field& field, const ModuleAction<Field>& a,
                                                                const std::vector<Vector<Field>>& s) {
  const std::size_t n = a.dim, m = s.size();
  const auto rs = restrict_action(field, a, s);
  // unknown P(i, j) at index i * n + j
  std::vector<typename Matrix<Field>::Entry> e;
  Vector<Field> rhs;
  std::size_t row = 0;
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!field.is_zero(s[t][j])) e.push_back({row, i * n + j, s[t][j]});
      }
      rhs.push_back(i == t ? field.one() : field.zero());
      ++row;
    }
  }
  for (std::size_t g = 0; g < a.gens.size(); ++g) {
    // P A - B P = 0
    std::vector<SparseVector<Field>> acols(n), brows(m);
    for (const auto& x : a.gens[g].entries()) acols[x.col].emplace_back(x.row, x.value);
    for (const auto& x : rs.gens[g].entries()) brows[x.row].emplace_back(x.col, x.value);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (const auto& [k, v] : acols[j]) e.push_back({row, i * n + k, v});
        for (const auto& [k, v] : brows[i]) e.push_back({row, k * n + j, field.neg(v)});
        rhs.push_back(field.zero());
        ++row;
      }
    }
  }
  const auto sol = solve(field, Matrix<Field>::from_entries(field, row, m * n, std::move(e)), rhs);
  if (!sol) return std::nullopt;
  std::vector<Vector<Field>> prows(m, Vector<Field>(n, field.zero()));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) prows[i][j] = (*sol)[i * n + j];
  }
  return nullspace(field, Matrix<Field>::from_rows(field, n, prows));
}

template <class Field>
void split_rec(const Field& field, const ModuleAction<Field>& a, const std::vector<Vector<Field>>& basis,
               const SearchOptions& opt, std::vector<std::vector<Vector<Field>>>& parts, bool& semisimple,
               std::string& log) {
  if (basis.empty()) return;
  const auto ra = restrict_action(field, a, basis);
  const auto res = find_submodule(field, ra, opt);
  log += res.transcript;
  using Status = typename SearchResult<Field>::Status;
  if (res.status == Status::inconclusive) fail(ErrorCode::Inconclusive, "submodule search inconclusive");
  if (res.status == Status::irreducible) {
    parts.push_back(basis);
    return;
  }
  auto lift = [&](const std::vector<Vector<Field>>& local) {
    std::vector<Vector<Field>> out;
    for (const auto& c : local) {
      Vector<Field> v(a.dim, field.zero());
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (!field.is_zero(c[i])) axpy(field, v, c[i], basis[i]);
      }
      out.push_back(std::move(v));
    }
    return out;
  };
  const auto& sub = res.sub.basis();
  const auto comp = invariant_complement(field, ra, sub);
  if (!comp) {
    semisimple = false;
    parts.push_back(lift(sub));
    parts.push_back(basis);
    return;
  }
  split_rec(field, a, lift(sub), opt, parts, semisimple, log);
  split_rec(field, a, lift(*comp), opt, parts, semisimple, log);
}

}  // namespace detail

/// Decomposes g_1 into irreducible g0-submodules. When some invariant subspace has no invariant
/// complement the result holds a flag and the filtration found so far.
template <class Field>
G1Split<Field> split_g1(const Field& field, const GradedProlong<Field>& P, const SearchOptions& opt = {}) {
  if (P.components.count(1) == 0) fail(ErrorCode::BadSize, "g_1 has not been computed");
  const auto& g1 = P.components.at(1);
  const auto a = g0_action_on(field, P.vars, P.components.at(0), g1);
  std::vector<Vector<Field>> id;
  for (std::size_t i = 0; i < g1.size(); ++i) {
    Vector<Field> e(g1.size(), field.zero());
    e[i] = field.one();
    id.push_back(std::move(e));
  }
  std::vector<std::vector<Vector<Field>>> parts;
  G1Split<Field> out;
  detail::split_rec(field, a, id, opt, parts, out.semisimple, out.transcript);
  for (const auto& part : parts) {
    std::vector<FieldSum<Field>> xs;
    for (const auto& c : part) xs.push_back(fs_combine(field, g1, c));
    out.parts.push_back(detail::canonical_basis(field, std::move(xs)));
  }
  if (out.semisimple) {
    std::stable_sort(out.parts.begin(), out.parts.end(),
                     [](const auto& x, const auto& y) { return x.size() < y.size(); });
  }
  return out;
}

}  // namespace modlie
