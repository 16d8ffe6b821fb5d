#pragma once

// JSON interchange for structure-constant algebras and matrix algebras.
//
// Algebra files:
//   {"p": 7, "N": [1], "basis": [{"name": "e", "parity": 0, "degree": -1}, ...],
//    "brackets": [[i, j, [[k, c], ...]], ...], "squares": [[i, [[k, c], ...]], ...],
//    "meta": {"seed": "...", "D": 2, "version": "..."}}
// "squares" is present iff p = 2. Coefficients are integers in [0, p), or "num/den"
// strings when p = 0. Only nonzero brackets are listed, sorted by (i, j) then k.
//
// Matrix files (input to queerify):
//   {"p": 2, "n": 2, "matrices": [[[0, 1], [1, 0]], ...], "labels": ["a", ...]}

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "modlie/algebra.hpp"

namespace modlie {

inline constexpr const char* kVersion = "0.1.0";

struct AlgebraMeta {
  std::string seed;
  int D = 0;
  std::string version = kVersion;
  /// Brackets into degrees above D were dropped (infinite prolong cut at D).
  bool truncated = false;
};

using AnyAlgebra = std::variant<SCAlgebra<PrimeField>, SCAlgebra<RationalField>>;

struct LoadedAlgebra {
  AnyAlgebra algebra;
  std::vector<std::uint32_t> N;
  AlgebraMeta meta;
};

using AnyMatrixAlgebra = std::variant<MatrixAlgebra<PrimeField>, MatrixAlgebra<RationalField>>;

struct LoadedMatrices {
  std::uint64_t p = 0;
  AnyMatrixAlgebra matrices;
};

/// Calls fn(field) with GF(p) for p > 0 and the rationals for p = 0.
template <class Fn>
decltype(auto) with_field(std::uint64_t p, Fn&& fn) {
  if (p == 0) return fn(RationalField{});
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "p must be prime or 0");
  return fn(PrimeField(p));
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson coeff_json(const PrimeField&, std::uint64_t c) { return c; }
inline ojson coeff_json(const RationalField& f, const mpq_class& c) { return f.to_string(c); }

template <class Field>
ojson terms_json(const Field& field, const SparseVector<Field>& c) {
  ojson out = ojson::array();
  for (const auto& [k, v] : c) out.push_back(ojson::array({k, coeff_json(field, v)}));
  return out;
}

[[noreturn]] inline void bad(const std::string& source, const std::string& where, const std::string& what) {
  fail(ErrorCode::InvalidInput, source + ": at " + (where.empty() ? "/" : where) + ": " + what);
}

inline std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

inline ojson parse_text(std::string_view text, const std::string& source) {
  try {
    return ojson::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::InvalidInput, source + ":" + line_col(text, e.byte > 0 ? e.byte - 1 : 0) +
                                      " (offset " + std::to_string(e.byte) + "): malformed JSON");
  }
}

inline void require_keys(const ojson& j, const std::string& source, const std::string& where,
                         const std::set<std::string>& required, const std::set<std::string>& optional = {}) {
  if (!j.is_object()) bad(source, where, "expected an object");
  for (const auto& k : required) {
    if (!j.contains(k)) bad(source, where, "missing key \"" + k + "\"");
  }
  for (const auto& [k, v] : j.items()) {
    if (!required.count(k) && !optional.count(k)) bad(source, where, "unexpected key \"" + k + "\"");
  }
}

inline std::uint64_t uint_at(const ojson& j, const std::string& source, const std::string& where) {
  if (!j.is_number_unsigned()) bad(source, where, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

inline std::int64_t int_at(const ojson& j, const std::string& source, const std::string& where) {
  if (!j.is_number_integer()) bad(source, where, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::uint64_t scalar_at(const PrimeField& f, const ojson& j, const std::string& source, const std::string& where) {
  const auto v = uint_at(j, source, where);
  if (v >= f.characteristic()) bad(source, where, "coefficient out of range [0, p)");
  return v;
}

inline mpq_class scalar_at(const RationalField& f, const ojson& j, const std::string& source, const std::string& where) {
  if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
  if (!j.is_string()) bad(source, where, "expected a \"num/den\" string");
  try {
    return f.parse(j.get<std::string>());
  } catch (const Error& e) {
    bad(source, where, e.what());
  }
}

template <class Field>
SparseVector<Field> terms_at(const Field& f, const ojson& j, std::size_t dim, const std::string& source,
                             const std::string& where) {
  if (!j.is_array()) bad(source, where, "expected an array of [k, c] pairs");
  SparseVector<Field> out;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const auto w = where + "/" + std::to_string(t);
    if (!j[t].is_array() || j[t].size() != 2) bad(source, w, "expected [k, c]");
    const auto k = uint_at(j[t][0], source, w + "/0");
    if (k >= dim) bad(source, w + "/0", "basis index out of range");
    if (!out.empty() && out.back().first >= k) bad(source, w + "/0", "indices must be strictly increasing");
    auto c = scalar_at(f, j[t][1], source, w + "/1");
    if (f.is_zero(c)) bad(source, w + "/1", "zero coefficients must be omitted");
    out.emplace_back(k, std::move(c));
  }
  return out;
}

template <class Field>
SCAlgebra<Field> algebra_from_json(const Field& f, const ojson& j, const std::string& source) {
  const auto& basis = j["basis"];
  if (!basis.is_array()) bad(source, "/basis", "expected an array");
  std::vector<BasisLabel> labels;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto w = "/basis/" + std::to_string(i);
    require_keys(basis[i], source, w, {"name", "parity", "degree"});
    if (!basis[i]["name"].is_string()) bad(source, w + "/name", "expected a string");
    const auto par = uint_at(basis[i]["parity"], source, w + "/parity");
    if (par > 1) bad(source, w + "/parity", "parity must be 0 or 1");
    labels.push_back({basis[i]["name"].get<std::string>(), par == 1,
                      static_cast<int>(int_at(basis[i]["degree"], source, w + "/degree"))});
  }
  const std::size_t n = labels.size();
  const bool p2 = f.characteristic() == 2;
  SCAlgebra<Field> a(f, labels);

  const auto& brackets = j["brackets"];
  if (!brackets.is_array()) bad(source, "/brackets", "expected an array");
  std::optional<std::pair<std::uint64_t, std::uint64_t>> last;
  for (std::size_t t = 0; t < brackets.size(); ++t) {
    const auto w = "/brackets/" + std::to_string(t);
    const auto& b = brackets[t];
    if (!b.is_array() || b.size() != 3) bad(source, w, "expected [i, j, terms]");
    const auto i = uint_at(b[0], source, w + "/0"), k = uint_at(b[1], source, w + "/1");
    if (i >= n || k >= n) bad(source, w, "basis index out of range");
    if (i > k) bad(source, w, "brackets are listed with i <= j");
    if (i == k && (!labels[i].odd || p2)) bad(source, w, "self-bracket of this element is zero by definition");
    if (last && *last >= std::pair(i, k)) bad(source, w, "brackets must be sorted by (i, j) without repeats");
    last = std::pair(i, k);
    a.set_bracket(i, k, terms_at(f, b[2], n, source, w + "/2"));
  }

  if (p2) {
    const auto& squares = j["squares"];
    if (!squares.is_array()) bad(source, "/squares", "expected an array");
    std::optional<std::uint64_t> prev;
    for (std::size_t t = 0; t < squares.size(); ++t) {
      const auto w = "/squares/" + std::to_string(t);
      const auto& s = squares[t];
      if (!s.is_array() || s.size() != 2) bad(source, w, "expected [i, terms]");
      const auto i = uint_at(s[0], source, w + "/0");
      if (i >= n) bad(source, w + "/0", "basis index out of range");
      if (!labels[i].odd) bad(source, w + "/0", "squares are given for odd elements only");
      if (prev && *prev >= i) bad(source, w + "/0", "squares must be sorted without repeats");
      prev = i;
      a.set_square(i, terms_at(f, s[1], n, source, w + "/1"));
    }
  }
  return a;
}

template <class Field>
MatrixAlgebra<Field> matrices_from_json(const Field& f, const ojson& j, const std::string& source) {
  MatrixAlgebra<Field> m;
  m.n = uint_at(j["n"], source, "/n");
  if (m.n == 0) bad(source, "/n", "n must be positive");
  const auto& ms = j["matrices"];
  if (!ms.is_array() || ms.empty()) bad(source, "/matrices", "expected a nonempty array");
  for (std::size_t t = 0; t < ms.size(); ++t) {
    const auto w = "/matrices/" + std::to_string(t);
    if (!ms[t].is_array() || ms[t].size() != m.n) bad(source, w, "expected n rows");
    DenseMatrix<Field> x(f, m.n, m.n);
    for (std::size_t r = 0; r < m.n; ++r) {
      const auto wr = w + "/" + std::to_string(r);
      if (!ms[t][r].is_array() || ms[t][r].size() != m.n) bad(source, wr, "expected n entries");
      for (std::size_t c = 0; c < m.n; ++c) x(r, c) = scalar_at(f, ms[t][r][c], source, wr + "/" + std::to_string(c));
    }
    m.basis.push_back(std::move(x));
  }
  if (j.contains("labels")) {
    const auto& ls = j["labels"];
    if (!ls.is_array() || ls.size() != ms.size()) bad(source, "/labels", "expected one label per matrix");
    for (std::size_t t = 0; t < ls.size(); ++t) {
      if (!ls[t].is_string()) bad(source, "/labels/" + std::to_string(t), "expected a string");
      m.labels.push_back(ls[t].get<std::string>());
    }
  } else {
    for (std::size_t t = 0; t < ms.size(); ++t) m.labels.push_back("a" + std::to_string(t + 1));
  }
  try {
    (void)BasisSpan<Field>(f, m.n * m.n, flatten_all(m.basis));
  } catch (const Error&) {
    bad(source, "/matrices", "matrices are linearly dependent");
  }
  return m;
}

inline std::uint64_t characteristic_at(const ojson& j, const std::string& source) {
  const auto p = uint_at(j["p"], source, "/p");
  if (p != 0 && !is_prime(p)) bad(source, "/p", "p must be prime or 0");
  return p;
}

}  // namespace detail

/// Canonical text: one top-level key per line, one bracket or square per line.
template <class Field>
std::string algebra_to_json(const SCAlgebra<Field>& a, const std::vector<std::uint32_t>& N, const AlgebraMeta& meta) {
  using detail::ojson;
  const auto& f = a.field();
  const auto p = f.characteristic();
  std::ostringstream out;
  out << "{\n  \"p\": " << p << ",\n  \"N\": " << ojson(N).dump() << ",\n  \"basis\": [";
  for (std::size_t i = 0; i < a.dim(); ++i) {
    ojson b;
    b["name"] = a.basis()[i].name;
    b["parity"] = a.is_odd(i) ? 1 : 0;
    b["degree"] = a.basis()[i].degree;
    out << (i ? ",\n    " : "\n    ") << b.dump();
  }
  out << (a.dim() ? "\n  ]" : "]") << ",\n  \"brackets\": [";
  bool first = true;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i; j < a.dim(); ++j) {
      const auto c = a.bracket(i, j);
      if (c.empty()) continue;
      out << (first ? "\n    " : ",\n    ") << ojson::array({i, j, detail::terms_json(f, c)}).dump();
      first = false;
    }
  }
  out << (first ? "]" : "\n  ]");
  if (p == 2) {
    out << ",\n  \"squares\": [";
    first = true;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a.square(i).empty()) continue;
      out << (first ? "\n    " : ",\n    ") << ojson::array({i, detail::terms_json(f, a.square(i))}).dump();
      first = false;
    }
    out << (first ? "]" : "\n  ]");
  }
  ojson m;
  m["seed"] = meta.seed;
  m["D"] = meta.D;
  m["version"] = meta.version;
  if (meta.truncated) m["truncated"] = true;
  out << ",\n  \"meta\": " << m.dump() << "\n}\n";
  return out.str();
}

inline LoadedAlgebra parse_algebra(std::string_view text, const std::string& source = "<input>") {
  const auto j = detail::parse_text(text, source);
  detail::require_keys(j, source, "", {"p", "N", "basis", "brackets", "meta"}, {"squares"});
  const auto p = detail::characteristic_at(j, source);
  if ((p == 2) != j.contains("squares")) detail::bad(source, "/squares", "\"squares\" is present iff p = 2");
  LoadedAlgebra out{with_field(p, [&](const auto& f) { return AnyAlgebra(detail::algebra_from_json(f, j, source)); }),
                    {}, {}};
  if (!j["N"].is_array()) detail::bad(source, "/N", "expected an array");
  for (std::size_t i = 0; i < j["N"].size(); ++i) {
    out.N.push_back(static_cast<std::uint32_t>(detail::uint_at(j["N"][i], source, "/N/" + std::to_string(i))));
  }
  const auto& m = j["meta"];
  detail::require_keys(m, source, "/meta", {"seed", "D", "version"}, {"truncated"});
  if (!m["seed"].is_string()) detail::bad(source, "/meta/seed", "expected a string");
  if (!m["version"].is_string()) detail::bad(source, "/meta/version", "expected a string");
  out.meta.seed = m["seed"].get<std::string>();
  out.meta.D = static_cast<int>(detail::int_at(m["D"], source, "/meta/D"));
  out.meta.version = m["version"].get<std::string>();
  if (m.contains("truncated")) {
    if (!m["truncated"].is_boolean()) detail::bad(source, "/meta/truncated", "expected a boolean");
    out.meta.truncated = m["truncated"].get<bool>();
  }
  return out;
}

inline LoadedMatrices parse_matrix_algebra(std::string_view text, const std::string& source = "<input>") {
  const auto j = detail::parse_text(text, source);
  detail::require_keys(j, source, "", {"p", "n", "matrices"}, {"labels"});
  const auto p = detail::characteristic_at(j, source);
  return {p, with_field(p, [&](const auto& f) { return AnyMatrixAlgebra(detail::matrices_from_json(f, j, source)); })};
}

/// Whether a JSON text looks like a matrix file rather than an algebra file.
inline bool is_matrix_file(std::string_view text, const std::string& source = "<input>") {
  const auto j = detail::parse_text(text, source);
  return j.is_object() && j.contains("matrices");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::InvalidInput, "write to '" + path + "' failed");
}

}  // namespace modlie
