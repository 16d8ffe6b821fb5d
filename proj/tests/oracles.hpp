#pragma once

// Independent brute-force oracles shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <bit>
#include <map>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include "modlie/modlie.hpp"

namespace oracle {

using namespace modlie;

/// {X : V -> g0 linear | X(u)v = X(v)u}, built from the matrices alone.
template <class Field>
std::vector<Vector<Field>> symmetric_maps(const Field& f, const MatrixAlgebra<Field>& g0, const ModuleSpec<Field>& v) {
  const std::size_t n = v.dim, d = v.action.size();
  // unknown X_{u,a} at u * d + a
  std::vector<typename Matrix<Field>::Entry> e;
  std::size_t row = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = u + 1; w < n; ++w) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < d; ++a) {
          e.push_back({row, u * d + a, v.action[a](i, w)});
          e.push_back({row, w * d + a, f.neg(v.action[a](i, u))});
        }
        ++row;
      }
    }
  }
  return nullspace(f, Matrix<Field>::from_entries(f, row, n * d, std::move(e)));
}

/// g_1 of a depth-1 prolong against the symmetric-maps nullspace: equal dimension and
/// u -> [d_u, X] maps g_1 injectively into it.
template <class Field>
bool g1_matches(const Field& f, const MatrixAlgebra<Field>& g0, const ModuleSpec<Field>& v, std::string* why = nullptr) {
  const auto r = embed_depth1(f, g0, v);
  const auto P = complete_prolong(f, r, 1);
  const auto maps = symmetric_maps(f, g0, v);
  auto no = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (maps.size() != P.dim(1)) {
    return no("oracle dim " + std::to_string(maps.size()) + " vs g_1 dim " + std::to_string(P.dim(1)));
  }
  const Subspace<Field> os(f, v.dim * g0.dim(), maps);
  const FieldSpan<Field> g0span(f, r.components.at(0));
  std::vector<Vector<Field>> images;
  for (const auto& x : P.components.at(1)) {
    Vector<Field> coords;
    for (std::size_t u = 0; u < v.dim; ++u) {
      const auto c0 = g0span.coordinates(vf_bracket(f, r.vars, r.components.at(-1)[u], x));
      if (!c0) return no("[d_u, X] outside g_0");
      coords.insert(coords.end(), c0->begin(), c0->end());
    }
    if (!os.contains(coords)) return no("g_1 field is not a symmetric map");
    images.push_back(std::move(coords));
  }
  if (!images.empty() && Subspace<Field>(f, v.dim * g0.dim(), images).dim() != images.size()) {
    return no("g_1 -> maps is not injective");
  }
  return true;
}

// GF(2) algebras of small dimension; vectors are bitmasks over the basis.

struct Bits {
  std::size_t n = 0;
  std::vector<bool> odd;
  std::vector<std::vector<unsigned>> br;  // br[i][j] mask of [e_i, e_j]
  std::vector<unsigned> sq;               // squares of odd basis vectors

  unsigned bracket(unsigned x, unsigned y) const {
    unsigned out = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(x >> i & 1)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y >> j & 1) out ^= br[i][j];
      }
    }
    return out;
  }
  unsigned square(unsigned x) const {
    unsigned out = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(x >> i & 1)) continue;
      out ^= sq[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        if (x >> j & 1) out ^= br[i][j];
      }
    }
    return out;
  }
  unsigned odd_mask() const {
    unsigned m = 0;
    for (std::size_t i = 0; i < n; ++i) m |= odd[i] ? 1u << i : 0u;
    return m;
  }
};

/// Graded subspace of GF(2)^n (as a set of masks) that is an ideal closed under squares.
bool is_ideal(const Bits& b, const std::set<unsigned>& s) {
  const unsigned om = b.odd_mask();
  for (const unsigned v : s) {
    if (!s.count(v & om)) return false;
    for (std::size_t i = 0; i < b.n; ++i) {
      if (!s.count(b.bracket(1u << i, v))) return false;
    }
    if ((v & ~om) == 0 && v && !s.count(b.square(v))) return false;
  }
  return true;
}

bool brute_simple(const Bits& b) {
  if (b.n <= 1) return false;
  bool abelian = true;
  for (std::size_t i = 0; i < b.n; ++i) {
    abelian = abelian && b.sq[i] == 0;
    for (std::size_t j = 0; j < b.n; ++j) abelian = abelian && b.br[i][j] == 0;
  }
  if (abelian) return false;
  const unsigned full = (1u << b.n) - 1;
  // every subspace is the span of some subset of nonzero vectors; enumerate spans of up to n generators
  std::set<std::set<unsigned>> seen;
  std::vector<unsigned> gens;
  std::function<bool(unsigned, std::size_t)> rec = [&](unsigned from, std::size_t depth) {
    std::set<unsigned> span{0};
    for (const unsigned g : gens) {
      std::set<unsigned> more = span;
      for (const unsigned v : span) more.insert(v ^ g);
      span = std::move(more);
    }
    if (span.size() > 1 && span.size() < (1u << b.n) && seen.insert(span).second && is_ideal(b, span)) return true;
    if (depth == b.n) return false;
    for (unsigned g = from; g <= full; ++g) {
      gens.push_back(g);
      const bool hit = rec(g + 1, depth + 1);
      gens.pop_back();
      if (hit) return true;
    }
    return false;
  };
  return !rec(1, 0);
}

SCAlgebra<PrimeField> to_sc(const PrimeField& f, const Bits& b) {
  std::vector<BasisLabel> labels;
  for (std::size_t i = 0; i < b.n; ++i) labels.push_back({"e" + std::to_string(i + 1), b.odd[i], 0});
  SCAlgebra<PrimeField> a(f, labels);
  auto coeffs = [&](unsigned m) {
    SparseVector<PrimeField> c;
    for (std::size_t k = 0; k < b.n; ++k) {
      if (m >> k & 1) c.emplace_back(k, 1);
    }
    return c;
  };
  for (std::size_t i = 0; i < b.n; ++i) {
    for (std::size_t j = i + 1; j < b.n; ++j) a.set_bracket(i, j, coeffs(b.br[i][j]));
    a.set_square(i, coeffs(b.sq[i]));
  }
  return a;
}

Bits random_bits(std::mt19937_64& rng, std::size_t n, bool super) {
  Bits b;
  b.n = n;
  b.odd.assign(n, false);
  if (super) {
    for (std::size_t i = 0; i < n; ++i) b.odd[i] = rng() & 1;
  }
  const unsigned om = b.odd_mask(), em = ((1u << n) - 1) & ~om;
  b.br.assign(n, std::vector<unsigned>(n, 0));
  b.sq.assign(n, 0);
  // sparse random tables keep the Jacobi acceptance rate reasonable
  auto pick = [&](unsigned allowed) {
    unsigned m = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if ((allowed >> k & 1) && rng() % 3 == 0) m |= 1u << k;
    }
    return m;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const unsigned m = pick(b.odd[i] != b.odd[j] ? om : em);
      b.br[i][j] = b.br[j][i] = m;
    }
    if (b.odd[i]) b.sq[i] = pick(em);
  }
  return b;
}

/// Jacobi identity and [x^2, y] = [x, [x, y]] for odd basis x, in characteristic 2.
inline bool bits_axioms(const Bits& b) {
  for (std::size_t i = 0; i < b.n; ++i) {
    for (std::size_t j = 0; j < b.n; ++j) {
      for (std::size_t k = 0; k < b.n; ++k) {
        const unsigned lhs = b.bracket(1u << i, b.br[j][k]);
        const unsigned rhs = b.bracket(b.br[i][j], 1u << k) ^ b.bracket(1u << j, b.br[i][k]);
        if (lhs != rhs) return false;
      }
      if (b.odd[i] && b.bracket(b.sq[i], 1u << j) != b.bracket(1u << i, b.br[i][j])) return false;
    }
  }
  return true;
}

/// All subspaces of GF(2)^n as sorted element lists.
inline const std::vector<std::vector<unsigned>>& all_subspaces(std::size_t n) {
  static std::map<std::size_t, std::vector<std::vector<unsigned>>> cache;
  auto& out = cache[n];
  if (!out.empty()) return out;
  std::set<std::vector<unsigned>> seen;
  std::function<void(std::vector<unsigned>, unsigned)> grow = [&](std::vector<unsigned> span, unsigned from) {
    if (!seen.insert(span).second) return;
    for (unsigned g = from; g < (1u << n); ++g) {
      if (std::find(span.begin(), span.end(), g) != span.end()) continue;
      auto next = span;
      for (const unsigned v : span) next.push_back(v ^ g);
      std::sort(next.begin(), next.end());
      grow(next, g + 1);
    }
  };
  grow({0}, 1);
  out.assign(seen.begin(), seen.end());
  return out;
}

/// Same verdict as brute_simple, scanning the precomputed subspace list.
inline bool brute_simple_fast(const Bits& b) {
  if (b.n <= 1) return false;
  bool abelian = true;
  for (std::size_t i = 0; i < b.n; ++i) {
    abelian = abelian && b.sq[i] == 0;
    for (std::size_t j = 0; j < b.n; ++j) abelian = abelian && b.br[i][j] == 0;
  }
  if (abelian) return false;
  const unsigned om = b.odd_mask();
  for (const auto& s : all_subspaces(b.n)) {
    if (s.size() == 1 || s.size() == (1u << b.n)) continue;
    std::uint32_t member = 0;
    for (const unsigned v : s) member |= 1u << v;
    auto in = [&](unsigned v) { return member >> v & 1; };
    bool ideal = true;
    for (const unsigned v : s) {
      if (!ideal) break;
      ideal = in(v & om);
      for (std::size_t i = 0; ideal && i < b.n; ++i) ideal = in(b.bracket(1u << i, v));
      if (ideal && v && (v & ~om) == 0) ideal = in(b.square(v));
    }
    if (ideal) return false;
  }
  return true;
}

/// Every GF(2) table of dimension n with parity mask pm (brackets respect parity, squares on odd elements).
inline void for_each_table(std::size_t n, unsigned pm, const std::function<void(const Bits&)>& fn) {
  Bits b;
  b.n = n;
  for (std::size_t i = 0; i < n; ++i) b.odd.push_back(pm >> i & 1);
  const unsigned om = b.odd_mask(), em = ((1u << n) - 1) & ~om;
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (i, j); j == n is the square of i
  std::vector<unsigned> allowed;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      slots.emplace_back(i, j);
      allowed.push_back(b.odd[i] != b.odd[j] ? om : em);
    }
    slots.emplace_back(i, n);
    allowed.push_back(b.odd[i] ? em : 0);
  }
  unsigned bits = 0;
  for (const auto m : allowed) bits += static_cast<unsigned>(std::popcount(m));
  for (unsigned long code = 0; code < (1ul << bits); ++code) {
    unsigned long c = code;
    b.br.assign(n, std::vector<unsigned>(n, 0));
    b.sq.assign(n, 0);
    for (std::size_t t = 0; t < slots.size(); ++t) {
      unsigned m = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (allowed[t] >> k & 1) {
          m |= (c & 1) ? 1u << k : 0u;
          c >>= 1;
        }
      }
      const auto [i, j] = slots[t];
      if (j == n) {
        b.sq[i] = m;
      } else {
        b.br[i][j] = b.br[j][i] = m;
      }
    }
    fn(b);
  }
}

// Root systems: graded dimensions of a simple Lie algebra under the grading that puts simple
// root `node` in degree 1 and the others in degree 0.

using Cartan = std::vector<std::vector<int>>;

/// a[i][j] = <alpha_i, alpha_j^vee>. Bourbaki numbering, nodes from 0.
inline Cartan cartan(const std::string& type) {
  auto simply_laced = [](std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    Cartan a(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
    for (const auto& [i, j] : edges) a[i][j] = a[j][i] = -1;
    return a;
  };
  if (type == "G2") return {{2, -1}, {-3, 2}};  // alpha_1 short
  if (type == "F4") return {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}};
  if (type == "E6") return simply_laced(6, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 3}});
  if (type == "E8") return simply_laced(8, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}});
  throw std::invalid_argument("unknown root system " + type);
}

/// Positive roots as coefficient vectors over the simple roots, by root strings.
inline std::vector<std::vector<int>> positive_roots(const Cartan& a) {
  const std::size_t n = a.size();
  std::set<std::vector<int>> roots;
  std::vector<std::vector<int>> layer;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    layer.push_back(e);
    roots.insert(e);
  }
  while (!layer.empty()) {
    std::set<std::vector<int>> next;
    for (const auto& b : layer) {
      for (std::size_t i = 0; i < n; ++i) {
        // b - p alpha_i, ..., b + q alpha_i with p - q = <b, alpha_i^vee>
        int down = 0;
        for (auto c = b; c[i] > 0;) {
          --c[i];
          if (!roots.count(c)) break;
          ++down;
        }
        int pair = 0;
        for (std::size_t j = 0; j < n; ++j) pair += b[j] * a[j][i];
        if (down - pair > 0) {
          auto c = b;
          ++c[i];
          if (roots.insert(c).second) next.insert(c);
        }
      }
    }
    layer.assign(next.begin(), next.end());
  }
  return {roots.begin(), roots.end()};
}

inline std::map<int, std::size_t> root_graded_dims(const std::string& type, std::size_t node) {
  const auto a = cartan(type);
  std::map<int, std::size_t> out;
  out[0] = a.size();
  for (const auto& r : positive_roots(a)) {
    ++out[r[node]];
    ++out[-r[node]];
  }
  return out;
}

/// Graded dimensions of the contact algebra on 2n + 1 variables: degree j counts monomials of
/// weight j + 2 in one variable of weight 2 and 2n of weight 1.
inline std::map<int, std::size_t> contact_dims(std::size_t n, int max_degree) {
  std::map<int, std::size_t> out;
  auto binom = [](std::size_t m, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (m - k + i) / i;
    return r;
  };
  for (int j = -2; j <= max_degree; ++j) {
    std::size_t c = 0;
    for (int t = 0; 2 * t <= j + 2; ++t) {
      const auto rest = static_cast<std::size_t>(j + 2 - 2 * t);
      c += binom(rest + 2 * n - 1, rest);
    }
    out[j] = c;
  }
  return out;
}

}  // namespace oracle
