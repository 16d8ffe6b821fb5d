#pragma once

// The supercommutative coefficient algebra O(m; N) (x) Lambda(n): divided
// powers x^(a) in m even variables, truncated at heights p^N_i, tensored with
// n Grassmann generators xi_j.
//
//   x^(a) x^(b) = C(a+b, a) x^(a+b),   d/dx x^(a) = x^(a-1),   xi_j xi_j = 0.
//
// When a, b < p^N and a + b >= p^N the Lucas coefficient vanishes, so products
// never leave the truncated algebra.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modlie/error.hpp"
#include "modlie/field.hpp"

namespace modlie {

/// Variable universe: m even variables followed by n odd ones.
struct Variables {
  std::size_t even = 0;
  std::size_t odd = 0;
  std::uint64_t characteristic = 0;
  /// Per even variable; 0 means unbounded.
  std::vector<std::uint32_t> heights;
  /// Grading weights, even variables first; all >= 1.
  std::vector<int> weights;
  std::vector<std::string> names;

  std::size_t size() const noexcept { return even + odd; }
  bool is_odd(std::size_t i) const noexcept { return i >= even; }

  /// Largest allowed exponent of even variable i, or nullopt if unbounded.
  std::optional<std::uint64_t> max_exponent(std::size_t i) const {
    if (characteristic == 0 || heights[i] == 0) return std::nullopt;
    std::uint64_t bound = 1;
    for (std::uint32_t k = 0; k < heights[i]; ++k) {
      if (bound > (1ULL << 20)) return std::nullopt;
      bound *= characteristic;
    }
    return bound - 1;
  }

  /// Standard names x1..xm, xi1..xin; unit weights; heights N (default 1 for p > 0).
  static Variables standard(std::size_t m, std::size_t n, std::uint64_t p,
                            std::optional<std::vector<std::uint32_t>> heights = std::nullopt) {
    if (n > 64) fail(ErrorCode::BadSize, "at most 64 odd variables");
    Variables v;
    v.even = m;
    v.odd = n;
    v.characteristic = p;
    if (heights) {
      if (heights->size() != m) fail(ErrorCode::BadSize, "height vector length must equal number of even variables");
      v.heights = *heights;
    } else {
      v.heights.assign(m, p == 0 ? 0U : 1U);
    }
    v.weights.assign(m + n, 1);
    for (std::size_t i = 0; i < m; ++i) v.names.push_back("x" + std::to_string(i + 1));
    for (std::size_t j = 0; j < n; ++j) v.names.push_back("xi" + std::to_string(j + 1));
    return v;
  }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return i;
    }
    fail(ErrorCode::InvalidInput, "unknown variable '" + std::string(name) + "'");
  }
};

/// x_1^(a_1) ... x_m^(a_m) xi_S, odd subset S as a bit mask (bit j <-> xi_{j+1}).
struct Monomial {
  std::vector<std::uint16_t> exps;
  std::uint64_t odd = 0;

  static Monomial unit(const Variables& vars) { return Monomial{std::vector<std::uint16_t>(vars.even, 0), 0}; }

  unsigned degree() const noexcept {
    unsigned d = static_cast<unsigned>(std::popcount(odd));
    for (const auto a : exps) d += a;
    return d;
  }
  bool parity() const noexcept { return (std::popcount(odd) & 1) != 0; }

  int weighted_degree(const Variables& vars) const {
    int d = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) d += static_cast<int>(exps[i]) * vars.weights[i];
    for (std::size_t j = 0; j < vars.odd; ++j) {
      if (odd >> j & 1ULL) d += vars.weights[vars.even + j];
    }
    return d;
  }

  /// Graded lexicographic: total degree, then exponents (larger first), then odd subset.
  std::strong_ordering operator<=>(const Monomial& o) const {
    if (auto c = degree() <=> o.degree(); c != 0) return c;
    for (std::size_t i = 0; i < exps.size() && i < o.exps.size(); ++i) {
      if (exps[i] != o.exps[i]) return o.exps[i] <=> exps[i];
    }
    if (auto c = exps.size() <=> o.exps.size(); c != 0) return c;
    return o.odd <=> odd;
  }
  bool operator==(const Monomial& o) const = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(m.odd);
    for (const auto a : m.exps) h = h * 1000003u ^ a;
    return h;
  }
};

/// Sign of xi_S xi_T -> xi_{S u T}; 0 when S and T intersect.
inline int grassmann_sign(std::uint64_t s, std::uint64_t t) {
  if (s & t) return 0;
  // count pairs (a in S, b in T) with a > b
  int swaps = 0;
  std::uint64_t tt = t;
  while (tt) {
    const int b = std::countr_zero(tt);
    tt &= tt - 1;
    const std::uint64_t above = b >= 63 ? 0 : (s >> (b + 1));
    swaps += std::popcount(above);
  }
  return (swaps & 1) ? -1 : 1;
}

template <class Field>
struct MonomialProduct {
  Monomial mono;
  typename Field::value_type coef;
};

/// a * b with divided-power binomials and Koszul sign; nullopt when zero.
template <class Field>
std::optional<MonomialProduct<Field>> monomial_mul(const Field& field, const Variables& vars, const Monomial& a,
                                                   const Monomial& b) {
  const int sign = grassmann_sign(a.odd, b.odd);
  if (sign == 0) return std::nullopt;
  MonomialProduct<Field> out{Monomial{std::vector<std::uint16_t>(a.exps.size()), a.odd | b.odd},
                             sign > 0 ? field.one() : field.neg(field.one())};
  for (std::size_t i = 0; i < a.exps.size(); ++i) {
    const std::uint64_t s = static_cast<std::uint64_t>(a.exps[i]) + b.exps[i];
    if (a.exps[i] != 0 && b.exps[i] != 0) {
      const auto c = field.binom(s, a.exps[i]);
      if (field.is_zero(c)) return std::nullopt;
      out.coef = field.mul(out.coef, c);
    }
    if (const auto bound = vars.max_exponent(i); bound && s > *bound) {
      fail(ErrorCode::Internal, "divided-power product escaped truncation");
    }
    if (s > 0xFFFF) fail(ErrorCode::BadSize, "exponent overflow");
    out.mono.exps[i] = static_cast<std::uint16_t>(s);
  }
  return out;
}

/// Left derivative d/dvar of a monomial; nullopt when zero.
template <class Field>
std::optional<MonomialProduct<Field>> monomial_derive(const Field& field, const Variables& vars, std::size_t var,
                                                      const Monomial& m) {
  if (!vars.is_odd(var)) {
    if (m.exps[var] == 0) return std::nullopt;
    MonomialProduct<Field> out{m, field.one()};
    --out.mono.exps[var];
    return out;
  }
  const std::size_t j = var - vars.even;
  if (!(m.odd >> j & 1ULL)) return std::nullopt;
  const int before = std::popcount(m.odd & ((1ULL << j) - 1));
  MonomialProduct<Field> out{m, (before & 1) ? field.neg(field.one()) : field.one()};
  out.mono.odd &= ~(1ULL << j);
  return out;
}

/// Sparse linear combination of monomials, sorted, no zero coefficients.
template <class Field>
class DPoly {
 public:
  using value_type = typename Field::value_type;
  using Term = std::pair<Monomial, value_type>;

  DPoly() = default;
  explicit DPoly(std::vector<Term> terms) : terms_(std::move(terms)) {}

  static DPoly monomial(const Field& field, Monomial m, value_type c) {
    if (field.is_zero(c)) return DPoly();
    return DPoly({Term{std::move(m), std::move(c)}});
  }

  /// Sums duplicate monomials and drops zeros.
  static DPoly from_terms(const Field& field, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    for (auto& t : terms) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second = field.add(out.back().second, t.second);
      } else {
        out.push_back(std::move(t));
      }
    }
    std::erase_if(out, [&](const Term& t) { return field.is_zero(t.second); });
    return DPoly(std::move(out));
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Parity of a homogeneous polynomial; nullopt if mixed or zero.
  std::optional<bool> parity() const {
    if (terms_.empty()) return std::nullopt;
    const bool p = terms_.front().first.parity();
    for (const auto& t : terms_) {
      if (t.first.parity() != p) return std::nullopt;
    }
    return p;
  }

  bool operator==(const DPoly& o) const {
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
DPoly<Field> dp_add(const Field& field, const DPoly<Field>& f, const DPoly<Field>& g) {
  auto terms = f.terms();
  terms.insert(terms.end(), g.terms().begin(), g.terms().end());
  return DPoly<Field>::from_terms(field, std::move(terms));
}

template <class Field>
DPoly<Field> dp_scale(const Field& field, const DPoly<Field>& f, const typename Field::value_type& c) {
  std::vector<typename DPoly<Field>::Term> terms;
  for (const auto& [m, v] : f.terms()) terms.emplace_back(m, field.mul(v, c));
  return DPoly<Field>::from_terms(field, std::move(terms));
}

template <class Field>
DPoly<Field> dp_sub(const Field& field, const DPoly<Field>& f, const DPoly<Field>& g) {
  return dp_add(field, f, dp_scale(field, g, field.neg(field.one())));
}

template <class Field>
DPoly<Field> dp_mul(const Field& field, const Variables& vars, const DPoly<Field>& f, const DPoly<Field>& g) {
  std::vector<typename DPoly<Field>::Term> terms;
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      if (auto prod = monomial_mul(field, vars, a, b)) {
        terms.emplace_back(std::move(prod->mono), field.mul(prod->coef, field.mul(ca, cb)));
      }
    }
  }
  return DPoly<Field>::from_terms(field, std::move(terms));
}

template <class Field>
DPoly<Field> dp_derive(const Field& field, const Variables& vars, std::size_t var, const DPoly<Field>& f) {
  if (var >= vars.size()) fail(ErrorCode::BadSize, "variable index out of range");
  std::vector<typename DPoly<Field>::Term> terms;
  for (const auto& [m, c] : f.terms()) {
    if (auto d = monomial_derive(field, vars, var, m)) terms.emplace_back(std::move(d->mono), field.mul(d->coef, c));
  }
  return DPoly<Field>::from_terms(field, std::move(terms));
}

/// All monomials of the given weighted degree, in monomial order.
inline std::vector<Monomial> monomials_of_weight(const Variables& vars, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial cur = Monomial::unit(vars);
  // odd subsets first, then distribute the rest over even variables
  std::function<void(std::size_t, int)> even_rec = [&](std::size_t i, int left) {
    if (i == vars.even) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const int w = vars.weights[i];
    const auto bound = vars.max_exponent(i);
    for (int a = 0; a * w <= left; ++a) {
      if (bound && static_cast<std::uint64_t>(a) > *bound) break;
      cur.exps[i] = static_cast<std::uint16_t>(a);
      even_rec(i + 1, left - a * w);
    }
    cur.exps[i] = 0;
  };
  const std::uint64_t subsets = vars.odd >= 64 ? 0 : (1ULL << vars.odd);
  for (std::uint64_t s = 0; s < subsets; ++s) {
    int w = 0;
    for (std::size_t j = 0; j < vars.odd; ++j) {
      if (s >> j & 1ULL) w += vars.weights[vars.even + j];
    }
    if (w > degree) continue;
    cur.odd = s;
    even_rec(0, degree - w);
  }
  cur.odd = 0;
  std::sort(out.begin(), out.end());
  return out;
}

/// "x1^(3) x2^(1) xi1 xi3"; the unit monomial renders as "1".
inline std::string render_monomial(const Variables& vars, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < vars.even; ++i) {
    if (m.exps[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += vars.names[i] + "^(" + std::to_string(m.exps[i]) + ")";
  }
  for (std::size_t j = 0; j < vars.odd; ++j) {
    if (!(m.odd >> j & 1ULL)) continue;
    if (!out.empty()) out += ' ';
    out += vars.names[vars.even + j];
  }
  return out.empty() ? "1" : out;
}

namespace detail {

inline std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline bool looks_like_scalar(const std::string& tok) {
  if (tok.empty()) return false;
  const char c = tok.front();
  return (c >= '0' && c <= '9') || c == '-' || c == '+';
}

}  // namespace detail

/// Parses a monomial token list; odd variables must appear in increasing order, a bare
/// even variable means exponent 1.
inline Monomial parse_monomial_tokens(const Variables& vars, const std::vector<std::string>& tokens) {
  Monomial m = Monomial::unit(vars);
  std::ptrdiff_t last_odd = -1;
  for (const auto& tok : tokens) {
    if (tok == "1") continue;
    const auto caret = tok.find("^(");
    if (caret != std::string::npos) {
      if (tok.back() != ')') fail(ErrorCode::InvalidInput, "bad exponent in '" + tok + "'");
      const std::size_t i = vars.index_of(tok.substr(0, caret));
      if (vars.is_odd(i)) fail(ErrorCode::InvalidInput, "odd variable with exponent: '" + tok + "'");
      const auto digits = tok.substr(caret + 2, tok.size() - caret - 3);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 5) {
        fail(ErrorCode::InvalidInput, "bad exponent in '" + tok + "'");
      }
      const unsigned long a = std::stoul(digits);
      if (a > 0xFFFF) fail(ErrorCode::InvalidInput, "exponent too large");
      m.exps[i] = static_cast<std::uint16_t>(a);
      continue;
    }
    const std::size_t i = vars.index_of(tok);
    if (!vars.is_odd(i)) {
      // bare even variable: x = x^(1)
      m.exps[i] = 1;
      continue;
    }
    const auto j = static_cast<std::ptrdiff_t>(i - vars.even);
    if (j <= last_odd) fail(ErrorCode::InvalidInput, "odd variables must be strictly increasing");
    last_odd = j;
    m.odd |= 1ULL << j;
  }
  return m;
}

inline Monomial parse_monomial(const Variables& vars, std::string_view text) {
  return parse_monomial_tokens(vars, detail::split_ws(text));
}

template <class Field>
std::string render_dpoly(const Field& field, const Variables& vars, const DPoly<Field>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    const auto mono = render_monomial(vars, m);
    if (field.is_one(c)) {
      out += mono;
    } else {
      out += field.to_string(c);
      if (mono != "1") out += " " + mono;
    }
  }
  return out;
}

template <class Field>
DPoly<Field> parse_dpoly(const Field& field, const Variables& vars, std::string_view text) {
  std::vector<typename DPoly<Field>::Term> terms;
  std::string s(text);
  if (detail::split_ws(s) == std::vector<std::string>{"0"}) return DPoly<Field>();
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find(" + ", pos);
    const auto chunk = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    auto tokens = detail::split_ws(chunk);
    if (tokens.empty()) fail(ErrorCode::InvalidInput, "empty term in '" + s + "'");
    auto coef = field.one();
    if (detail::looks_like_scalar(tokens.front()) && tokens.front() != "1") {
      coef = field.parse(tokens.front());
      tokens.erase(tokens.begin());
    } else if (tokens.front() == "1" && tokens.size() > 1) {
      tokens.erase(tokens.begin());
    }
    terms.emplace_back(parse_monomial_tokens(vars, tokens), coef);
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return DPoly<Field>::from_terms(field, std::move(terms));
}

}  // namespace modlie
