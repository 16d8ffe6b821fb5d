#pragma once

// Named seed pairs used by the CLI and the acceptance runner.

#include <optional>
#include <string>
#include <vector>

#include "modlie/seeds.hpp"

namespace modlie {

struct SeedInfo {
  std::string name;
  std::string description;
  /// Default for --n, 0 when the seed takes no parameter.
  std::size_t default_n = 0;
  std::string n_range;
  std::string p_range;
};

inline const std::vector<SeedInfo>& seed_list() {
  static const std::vector<SeedInfo> list = {
      {"line", "gl(1) on K (Euler field), depth 1", 0, "-", "any"},
      {"gl-phi1", "gl(n) on K^n, depth 1", 2, "n >= 1", "any"},
      {"gl-sym2", "gl(n) on S^2 K^n, depth 1", 2, "n >= 1", "p != 2"},
      {"sl2-sym2", "gl(2) on S^2 K^2, depth 1", 0, "-", "p != 2"},
      {"gl-wedge2", "gl(n) on wedge^2 K^n, depth 1", 4, "n >= 2", "any"},
      {"co-phi1", "o(n) + center on K^n, depth 1", 3, "n >= 2", "p != 2"},
      {"sp-phi1", "sp(n) on K^n, depth 1", 4, "n even", "any"},
      {"co-halfspin", "o(n) + center on a half-spin module, depth 1", 10, "n even >= 4", "p != 2"},
      {"contact", "csp(2n) on K^2n, Heisenberg lift", 1, "n >= 1", "any"},
      {"g2", "gl(2) on S^3 K^2, Heisenberg lift", 0, "-", "p > 3 or 0"},
      {"f4", "csp(6) on wedge^3_0 K^6, Heisenberg lift", 0, "-", "p != 2"},
      {"e6", "o(10) + center on half-spin 16, depth 1", 0, "-", "p != 2"},
      {"e8", "o(14) + center on half-spin 64, lift with 14 pairing forms", 0, "-", "p != 2"},
  };
  return list;
}

/// Matrix algebra families accepted wherever an algebra (rather than a seed pair) is expected.
inline bool is_matrix_family(const std::string& name) {
  return name == "gl" || name == "sl" || name == "sp" || name == "o";
}

template <class Field>
Realization<Field> build_seed(const Field& field, const std::string& name, std::optional<std::size_t> n_opt = std::nullopt,
                              const std::optional<std::vector<std::uint32_t>>& heights = std::nullopt) {
  const SeedInfo* info = nullptr;
  for (const auto& s : seed_list()) {
    if (s.name == name) info = &s;
  }
  if (!info) fail(ErrorCode::InvalidInput, "unknown seed '" + name + "'");
  const std::size_t n = n_opt.value_or(info->default_n);
  const std::string id = info->default_n ? name + ":" + std::to_string(n) : name;
  auto depth1 = [&](const MatrixAlgebra<Field>& g0, const std::string& kind) {
    return embed_depth1(field, g0, module_build(field, g0, kind), heights, id);
  };
  auto lift = [&](const MatrixAlgebra<Field>& g0, const std::string& kind) {
    const auto v = module_build(field, g0, kind);
    return heisenberg_lift(field, g0, v, symplectic_form(field, v), heights, id);
  };
  auto csp = [&](std::size_t m) {
    auto g0 = seed_matrix(field, "sp", m);
    // at p = 2 the identity already lies in sp
    if (field.characteristic() == 2) return g0;
    return with_center(field, g0);
  };
  if (name == "line") return depth1(seed_matrix(field, "gl", 1), "phi1");
  if (name == "gl-phi1") return depth1(seed_matrix(field, "gl", n), "phi1");
  if (name == "gl-sym2") return depth1(seed_matrix(field, "gl", n), "sym2");
  if (name == "sl2-sym2") return depth1(seed_matrix(field, "gl", 2), "sym2");
  if (name == "gl-wedge2") return depth1(seed_matrix(field, "gl", n), "wedge2");
  if (name == "co-phi1") return depth1(with_center(field, seed_matrix(field, "o", n)), "phi1");
  if (name == "sp-phi1") return depth1(seed_matrix(field, "sp", n), "phi1");
  if (name == "co-halfspin") return depth1(with_center(field, seed_matrix(field, "o", n)), "halfspin");
  if (name == "e6") return depth1(with_center(field, seed_matrix(field, "o", 10)), "halfspin");
  if (name == "contact") {
    if (n == 0) fail(ErrorCode::BadSize, "contact needs n >= 1");
    return lift(csp(2 * n), "phi1");
  }
  if (name == "g2") return lift(seed_matrix(field, "gl", 2), "sym3_of_gl2");
  if (name == "f4") return lift(csp(6), "wedge3_0");
  if (name == "e8") {
    const auto g0 = with_center(field, seed_matrix(field, "o", 14));
    const auto v = module_build(field, g0, "halfspin");
    return depth2_lift(field, g0, v, clifford_pairing_forms(field, 14), heights, id);
  }
  fail(ErrorCode::Internal, "seed '" + name + "' not wired");
}

}  // namespace modlie
