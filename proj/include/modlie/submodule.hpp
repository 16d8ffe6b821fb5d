#pragma once

// Invariant-subspace search for a matrix action (a "MeatAxe-lite"):
// exhaustive spinning for tiny modules, Norton's irreducibility test with
// seeded random algebra elements, basis-vector spinning, and Burnside's
// criterion as deterministic fallbacks.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modlie/error.hpp"
#include "modlie/linalg.hpp"

namespace modlie {

// ---------------------------------------------------------------------------
// Univariate polynomials, coefficients from low to high degree.

template <class Field>
using Poly = std::vector<typename Field::value_type>;

template <class Field>
void poly_trim(const Field& field, Poly<Field>& f) {
  while (!f.empty() && field.is_zero(f.back())) f.pop_back();
}

template <class Field>
Poly<Field> poly_sub(const Field& field, Poly<Field> a, const Poly<Field>& b) {
  if (a.size() < b.size()) a.resize(b.size(), field.zero());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = field.sub(a[i], b[i]);
  poly_trim(field, a);
  return a;
}

template <class Field>
Poly<Field> poly_mul(const Field& field, const Poly<Field>& a, const Poly<Field>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<Field> out(a.size() + b.size() - 1, field.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (field.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = field.fma(out[i + j], a[i], b[j]);
  }
  poly_trim(field, out);
  return out;
}

/// (quotient, remainder)
template <class Field>
std::pair<Poly<Field>, Poly<Field>> poly_divmod(const Field& field, Poly<Field> a, const Poly<Field>& b) {
  if (b.empty()) fail(ErrorCode::ZeroInverse, "polynomial division by zero");
  poly_trim(field, a);
  if (a.size() < b.size()) return {{}, a};
  Poly<Field> q(a.size() - b.size() + 1, field.zero());
  const auto lead_inv = field.inv(b.back());
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const auto c = field.mul(a[i], lead_inv);
    q[i - (b.size() - 1)] = c;
    if (field.is_zero(c)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      a[i - (b.size() - 1) + j] = field.sub(a[i - (b.size() - 1) + j], field.mul(c, b[j]));
    }
    if (i == 0) break;
  }
  poly_trim(field, a);
  poly_trim(field, q);
  return {q, a};
}

template <class Field>
Poly<Field> poly_monic(const Field& field, Poly<Field> f) {
  poly_trim(field, f);
  if (f.empty()) return f;
  const auto inv = field.inv(f.back());
  for (auto& c : f) c = field.mul(c, inv);
  return f;
}

template <class Field>
Poly<Field> poly_gcd(const Field& field, Poly<Field> a, Poly<Field> b) {
  poly_trim(field, a);
  poly_trim(field, b);
  while (!b.empty()) {
    auto r = poly_divmod(field, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(field, a);
}

template <class Field>
Poly<Field> poly_lcm(const Field& field, const Poly<Field>& a, const Poly<Field>& b) {
  if (a.empty() || b.empty()) return {};
  return poly_monic(field, poly_divmod(field, poly_mul(field, a, b), poly_gcd(field, a, b)).first);
}

template <class Field>
Poly<Field> poly_derivative(const Field& field, const Poly<Field>& f) {
  Poly<Field> out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(field.mul(field.from_uint(i), f[i]));
  poly_trim(field, out);
  return out;
}

template <class Field>
typename Field::value_type poly_eval(const Field& field, const Poly<Field>& f, const typename Field::value_type& x) {
  auto acc = field.zero();
  for (std::size_t i = f.size(); i-- > 0;) acc = field.fma(f[i], acc, x);
  return acc;
}

/// base^e mod m over GF(p)
inline Poly<PrimeField> poly_powmod(const PrimeField& field, Poly<PrimeField> base, std::uint64_t e,
                                    const Poly<PrimeField>& m) {
  Poly<PrimeField> r{1};
  base = poly_divmod(field, base, m).second;
  while (e) {
    if (e & 1) r = poly_divmod(field, poly_mul(field, r, base), m).second;
    base = poly_divmod(field, poly_mul(field, base, base), m).second;
    e >>= 1;
  }
  return r;
}

namespace detail {

inline void split_linear(const PrimeField& field, const Poly<PrimeField>& g, std::mt19937_64& rng,
                         std::vector<std::uint64_t>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(field.neg(field.mul(g[0], field.inv(g[1]))));
    return;
  }
  const std::uint64_t p = field.characteristic();
  if (p == 2) {
    for (std::uint64_t x : {0ULL, 1ULL}) {
      if (field.is_zero(poly_eval(field, g, x))) out.push_back(x);
    }
    return;
  }
  // Cantor-Zassenhaus equal-degree splitting for degree-1 factors
  while (true) {
    const std::uint64_t a = rng() % p;
    auto h = poly_powmod(field, Poly<PrimeField>{a, 1}, (p - 1) / 2, g);
    h = poly_sub(field, h, Poly<PrimeField>{1});
    const auto d = poly_gcd(field, h, g);
    if (d.size() > 1 && d.size() < g.size()) {
      split_linear(field, d, rng, out);
      split_linear(field, poly_divmod(field, g, d).first, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Distinct roots in GF(p), sorted.
inline std::vector<std::uint64_t> poly_roots(const PrimeField& field, const Poly<PrimeField>& f, std::mt19937_64& rng) {
  auto g = poly_monic(field, f);
  std::vector<std::uint64_t> out;
  if (g.size() <= 1) return out;
  const std::uint64_t p = field.characteristic();
  if (p <= 64) {
    for (std::uint64_t x = 0; x < p; ++x) {
      if (field.is_zero(poly_eval(field, g, x))) out.push_back(x);
    }
    return out;
  }
  // gcd with x^p - x isolates the product of distinct linear factors
  auto xp = poly_powmod(field, Poly<PrimeField>{0, 1}, p, g);
  const auto lin = poly_gcd(field, poly_sub(field, xp, Poly<PrimeField>{0, 1}), g);
  detail::split_linear(field, lin, rng, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

inline std::vector<mpz_class> small_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0 || n > mpz_class("1000000000000")) return out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace detail

/// Rational roots by the rational root theorem; gives up (returns what it has) on huge coefficients.
inline std::vector<mpq_class> poly_roots(const RationalField& field, const Poly<RationalField>& f, std::mt19937_64&) {
  auto g = poly_monic(field, f);
  std::vector<mpq_class> out;
  if (g.size() <= 1) return out;
  std::size_t low = 0;
  while (low < g.size() && field.is_zero(g[low])) ++low;
  if (low > 0) out.push_back(0);
  Poly<RationalField> h(g.begin() + static_cast<std::ptrdiff_t>(low), g.end());
  if (h.size() > 1) {
    mpz_class den = 1;
    for (const auto& c : h) den = lcm(den, c.get_den());
    std::vector<mpz_class> ints;
    for (const auto& c : h) ints.push_back(mpz_class(c * den));
    const auto nums = detail::small_divisors(ints.front());
    const auto dens = detail::small_divisors(ints.back());
    for (const auto& a : nums) {
      for (const auto& b : dens) {
        for (int s : {1, -1}) {
          mpq_class x(a * s, b);
          x.canonicalize();
          if (field.is_zero(poly_eval(field, h, x))) out.push_back(x);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Incremental semi-echelon basis (rows zero at earlier pivots).

template <class Field>
class EchelonBuilder {
 public:
  EchelonBuilder(const Field& field, std::size_t n) : field_(&field), n_(n) {}

  Vector<Field> reduce(Vector<Field> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto c = v[pivots_[i]];
      if (!field_->is_zero(c)) axpy(*field_, v, field_->neg(c), rows_[i]);
    }
    return v;
  }

  /// Adds v if new; returns the normalized reduced vector or nullopt.
  std::optional<Vector<Field>> add(const Vector<Field>& v) {
    auto r = reduce(v);
    std::size_t piv = 0;
    while (piv < n_ && field_->is_zero(r[piv])) ++piv;
    if (piv == n_) return std::nullopt;
    scale(*field_, r, field_->inv(r[piv]));
    pivots_.push_back(piv);
    rows_.push_back(r);
    return r;
  }

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient() const noexcept { return n_; }
  const std::vector<Vector<Field>>& rows() const noexcept { return rows_; }

 private:
  const Field* field_;
  std::size_t n_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector<Field>> rows_;
};

/// Minimal polynomial of v under m (monic).
template <class Field, class Op>
Poly<Field> krylov_minpoly(const Field& field, const Op& m, const Vector<Field>& v) {
  EchelonBuilder<Field> eb(field, v.size());
  std::vector<Vector<Field>> krylov;
  Vector<Field> w = v;
  while (true) {
    krylov.push_back(w);
    if (!eb.add(w)) break;
    w = m.apply(field, w);
  }
  const std::size_t k = krylov.size() - 1;
  std::vector<typename Matrix<Field>::Entry> e;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (!field.is_zero(krylov[i][r])) e.push_back({r, i, krylov[i][r]});
    }
  }
  const auto sol = solve(field, Matrix<Field>::from_entries(field, v.size(), k, std::move(e)), krylov[k]);
  if (!sol) fail(ErrorCode::Internal, "Krylov dependency not solvable");
  Poly<Field> out(k + 1, field.zero());
  for (std::size_t i = 0; i < k; ++i) out[i] = field.neg((*sol)[i]);
  out[k] = field.one();
  return out;
}

/// Minimal polynomial of m: lcm of Krylov polynomials over vectors outside the invariant span so far.
template <class Field, class Op>
Poly<Field> matrix_minpoly(const Field& field, const Op& m, std::size_t n) {
  Poly<Field> acc{field.one()};
  EchelonBuilder<Field> covered(field, n);
  for (std::size_t i = 0; i < n && covered.dim() < n; ++i) {
    Vector<Field> e(n, field.zero());
    e[i] = field.one();
    if (is_zero_vector(field, covered.reduce(e))) continue;
    acc = poly_lcm(field, acc, krylov_minpoly(field, m, e));
    Vector<Field> w = e;
    while (covered.add(w)) w = m.apply(field, w);
  }
  return acc;
}

/// A linear action on K^n given by generator matrices (sparse).
template <class Field>
struct ModuleAction {
  std::size_t dim = 0;
  std::vector<Matrix<Field>> gens;

  ModuleAction transposed(const Field& field) const {
    ModuleAction t;
    t.dim = dim;
    for (const auto& g : gens) {
      std::vector<typename Matrix<Field>::Entry> e;
      for (const auto& x : g.entries()) e.push_back({x.col, x.row, x.value});
      t.gens.push_back(Matrix<Field>::from_entries(field, g.cols(), g.rows(), std::move(e)));
    }
    return t;
  }
};

template <class Field>
ModuleAction<Field> module_from_dense(const Field& field, std::size_t n, const std::vector<DenseMatrix<Field>>& ms) {
  ModuleAction<Field> a;
  a.dim = n;
  for (const auto& m : ms) {
    std::vector<typename Matrix<Field>::Entry> e;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!field.is_zero(m(i, j))) e.push_back({i, j, m(i, j)});
      }
    }
    a.gens.push_back(Matrix<Field>::from_entries(field, n, n, std::move(e)));
  }
  return a;
}

/// Smallest invariant subspace containing the given vectors.
template <class Field>
Subspace<Field> spin(const Field& field, const ModuleAction<Field>& a, const std::vector<Vector<Field>>& seeds) {
  EchelonBuilder<Field> eb(field, a.dim);
  std::vector<Vector<Field>> queue;
  for (const auto& s : seeds) {
    if (auto r = eb.add(s)) queue.push_back(std::move(*r));
  }
  for (std::size_t head = 0; head < queue.size() && eb.dim() < a.dim; ++head) {
    for (const auto& g : a.gens) {
      if (auto r = eb.add(g.apply(field, queue[head]))) queue.push_back(std::move(*r));
      if (eb.dim() == a.dim) break;
    }
  }
  return Subspace<Field>(field, a.dim, eb.rows());
}

/// {v : w.v = 0 for all w in W}
template <class Field>
Subspace<Field> annihilator(const Field& field, const Subspace<Field>& w) {
  std::vector<Vector<Field>> rows = w.basis();
  const auto ns = nullspace(field, Matrix<Field>::from_rows(field, w.ambient(), rows));
  return Subspace<Field>(field, w.ambient(), ns);
}

struct SearchOptions {
  std::uint64_t seed = 1;
  int norton_attempts = 24;
  /// Exhaustive spinning when |K|^n does not exceed this.
  std::uint64_t exhaustive_limit = 4096;
  std::size_t burnside_limit = 48;
};

template <class Field>
struct SearchResult {
  enum class Status { found, irreducible, inconclusive };
  Status status = Status::inconclusive;
  /// Proper nonzero invariant subspace when found.
  Subspace<Field> sub;
  std::string transcript;
};

/// Searches for a proper nonzero invariant subspace. `closure` (optional) enlarges a
/// candidate to the smallest admissible invariant subspace containing it.
template <class Field>
SearchResult<Field> find_submodule(const Field& field, const ModuleAction<Field>& a, const SearchOptions& opt = {},
                                   const std::function<Subspace<Field>(const Subspace<Field>&)>& closure = {}) {
  using Status = typename SearchResult<Field>::Status;
  SearchResult<Field> res;
  std::ostringstream log;
  const std::size_t n = a.dim;
  auto accept = [&](Subspace<Field> s, const std::string& how) {
    if (closure) s = closure(s);
    if (s.dim() == 0 || s.dim() == n) return false;
    res.status = Status::found;
    res.sub = std::move(s);
    log << how << ": proper subspace of dim " << res.sub.dim() << "\n";
    return true;
  };
  auto finish = [&]() {
    res.transcript = log.str();
    return res;
  };
  if (n <= 1) {
    res.status = Status::irreducible;
    log << "dimension " << n << "\n";
    return finish();
  }

  // exhaustive: every minimal invariant subspace is cyclic
  const std::uint64_t p = field.characteristic();
  bool small = p != 0;
  std::uint64_t count = 1;
  for (std::size_t i = 0; small && i < n; ++i) {
    if (count > opt.exhaustive_limit / p) small = false;
    count *= p;
  }
  if (small) {
    // normalized vectors: first nonzero coordinate equal to 1
    std::vector<std::uint64_t> digits(n, 0);
    for (std::uint64_t code = 1; code < count; ++code) {
      std::uint64_t c = code;
      std::size_t first = n;
      for (std::size_t i = 0; i < n; ++i) {
        digits[i] = c % p;
        c /= p;
        if (digits[i] != 0 && first == n) first = i;
      }
      if (digits[first] != 1) continue;
      Vector<Field> v(n, field.zero());
      for (std::size_t i = 0; i < n; ++i) v[i] = field.from_uint(digits[i]);
      if (accept(spin(field, a, {v}), "exhaustive")) return finish();
    }
    res.status = Status::irreducible;
    log << "exhaustive: all " << count - 1 << " vectors spin to the whole module\n";
    return finish();
  }

  const auto dual = a.transposed(field);
  std::mt19937_64 rng(opt.seed);
  auto dense = [&](const Matrix<Field>& m) {
    DenseMatrix<Field> d(field, n, n);
    for (const auto& e : m.entries()) d(e.row, e.col) = e.value;
    return d;
  };
  std::vector<DenseMatrix<Field>> gd;
  for (const auto& g : a.gens) gd.push_back(dense(g));

  // Norton
  for (int attempt = 0; attempt < opt.norton_attempts && !gd.empty(); ++attempt) {
    DenseMatrix<Field> theta(field, n, n);
    for (const auto& g : gd) theta = theta.add(field, g, field.random(rng));
    for (int w = 0; w < 3; ++w) {
      const auto& x = gd[rng() % gd.size()];
      const auto& y = gd[rng() % gd.size()];
      theta = theta.add(field, x.mul(field, y), field.random(rng));
    }
    {
      const auto& x = gd[rng() % gd.size()];
      const auto& y = gd[rng() % gd.size()];
      const auto& z = gd[rng() % gd.size()];
      theta = theta.add(field, x.mul(field, y).mul(field, z), field.random(rng));
    }
    // minimal polynomial of a random vector under theta
    Vector<Field> v0(n);
    for (auto& c : v0) c = field.random(rng);
    if (is_zero_vector(field, v0)) continue;
    const auto minpoly = krylov_minpoly(field, theta, v0);
    for (const auto& lambda : poly_roots(field, minpoly, rng)) {
      auto shifted = theta;
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) = field.sub(shifted(i, i), lambda);
      std::vector<Vector<Field>> rows;
      for (std::size_t i = 0; i < n; ++i) {
        Vector<Field> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = shifted(i, j);
        rows.push_back(std::move(row));
      }
      const auto kernel = nullspace(field, Matrix<Field>::from_rows(field, n, rows));
      const auto tshift = shifted.transpose(field);
      std::vector<Vector<Field>> trows;
      for (std::size_t i = 0; i < n; ++i) {
        Vector<Field> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = tshift(i, j);
        trows.push_back(std::move(row));
      }
      const auto tkernel = nullspace(field, Matrix<Field>::from_rows(field, n, trows));
      bool all_full = true;
      for (const auto& v : kernel) {
        const auto s = spin(field, a, {v});
        if (s.dim() < n) {
          all_full = false;
          if (accept(s, "norton kernel spin (attempt " + std::to_string(attempt) + ")")) return finish();
        }
      }
      for (const auto& w : tkernel) {
        const auto s = spin(field, dual, {w});
        if (s.dim() < n) {
          all_full = false;
          if (accept(annihilator(field, s), "norton dual spin (attempt " + std::to_string(attempt) + ")")) {
            return finish();
          }
        }
      }
      if (kernel.size() == 1 && all_full) {
        res.status = Status::irreducible;
        log << "norton: attempt " << attempt << ", eigenvalue " << field.to_string(lambda)
            << " of nullity 1; kernel and dual kernel spin to the whole module\n";
        return finish();
      }
    }
  }

  // basis vectors and dual basis vectors
  for (std::size_t i = 0; i < n; ++i) {
    Vector<Field> e(n, field.zero());
    e[i] = field.one();
    if (accept(spin(field, a, {e}), "basis spin e" + std::to_string(i))) return finish();
    const auto s = spin(field, dual, {e});
    if (s.dim() < n && accept(annihilator(field, s), "dual basis spin e" + std::to_string(i))) return finish();
  }

  // Burnside: the enveloping algebra is all of End(V) iff V is absolutely irreducible
  if (n <= opt.burnside_limit) {
    EchelonBuilder<Field> eb(field, n * n);
    std::vector<DenseMatrix<Field>> queue;
    auto push = [&](const DenseMatrix<Field>& m) {
      if (eb.add(m.flatten())) queue.push_back(m);
    };
    push(DenseMatrix<Field>::identity(field, n));
    for (std::size_t head = 0; head < queue.size() && eb.dim() < n * n; ++head) {
      for (const auto& g : gd) {
        push(g.mul(field, queue[head]));
        if (eb.dim() == n * n) break;
      }
    }
    if (eb.dim() == n * n) {
      res.status = Status::irreducible;
      log << "burnside: enveloping algebra has dimension n^2 = " << n * n << "\n";
      return finish();
    }
    log << "burnside: enveloping algebra has dimension " << eb.dim() << " < " << n * n << "\n";
  }
  res.status = Status::inconclusive;
  log << "inconclusive\n";
  return finish();
}

}  // namespace modlie
