#include <catch2/catch_amalgamated.hpp>

#include "modlie/seeds.hpp"

using namespace modlie;

namespace {

template <class Field>
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("classical matrix algebra dimensions") {
  PrimeField f2(2), f7(7), f11(11);
  CHECK(seed_matrix(f2, "gl", 2).dim() == 4);
  CHECK(seed_matrix(f7, "sp", 4).dim() == 10);
  CHECK(seed_matrix(f11, "o", 5).dim() == 10);
  for (std::size_t n = 2; n <= 5; ++n) {
    CHECK(seed_matrix(f11, "gl", n).dim() == n * n);
    CHECK(seed_matrix(f11, "sl", n).dim() == n * n - 1);
    CHECK(seed_matrix(f11, "o", n + 1).dim() == (n + 1) * n / 2);
    if (n % 2 == 0) CHECK(seed_matrix(f11, "sp", n).dim() == n * (n + 1) / 2);
  }
  CHECK(code_of<PrimeField>([&] { seed_matrix(f2, "o", 4); }) == ErrorCode::UnsupportedChar);
  CHECK(code_of<PrimeField>([&] { seed_matrix(f7, "sp", 3); }) == ErrorCode::BadSize);
  CHECK(code_of<PrimeField>([&] { seed_matrix(f7, "gl", 0); }) == ErrorCode::BadSize);
}

TEST_CASE("module dimensions and homomorphism") {
  PrimeField f(11);
  CHECK(module_build(f, seed_matrix(f, "gl", 2), "sym2").dim == 3);
  CHECK(module_build(f, seed_matrix(f, "gl", 4), "wedge2").dim == 6);
  CHECK(module_build(f, seed_matrix(f, "gl", 3), "sym2").dim == 6);
  CHECK(module_build(f, seed_matrix(f, "gl", 2), "sym3_of_gl2").dim == 4);
  CHECK(module_build(f, seed_matrix(f, "sp", 6), "wedge3_0").dim == 14);
  CHECK(module_build(f, with_center(f, seed_matrix(f, "sp", 6)), "wedge3_0").dim == 14);
  CHECK(module_build(f, with_center(f, seed_matrix(f, "o", 10)), "halfspin").dim == 16);
  CHECK(module_build(f, seed_matrix(f, "o", 6), "halfspin").dim == 4);
  CHECK(module_build(f, seed_matrix(f, "o", 5), "spinor").dim == 4);
  CHECK(module_build(f, seed_matrix(f, "o", 7), "spinor").dim == 8);

  PrimeField f2(2);
  CHECK(code_of<PrimeField>([&] { module_build(f2, seed_matrix(f2, "gl", 2), "sym2"); }) ==
        ErrorCode::UnsupportedChar);
  CHECK(code_of<PrimeField>([&] { module_build(f, seed_matrix(f, "gl", 2), "halfspin"); }) ==
        ErrorCode::IncompatibleKind);
}

TEST_CASE("half-spin of o(14)") {
  PrimeField f(13);
  CHECK(module_build(f, seed_matrix(f, "o", 14), "halfspin").dim == 64);
}

TEST_CASE("rational spinors") {
  RationalField q;
  CHECK(module_build(q, with_center(q, seed_matrix(q, "o", 8)), "halfspin").dim == 8);
}

TEST_CASE("depth-1 embedding") {
  PrimeField f(7);
  const auto g0 = seed_matrix(f, "gl", 3);
  const auto r = embed_depth1(f, g0, module_build(f, g0, "phi1"));
  // identity -> minus Euler field
  auto vars = r.vars;
  FieldSum<PrimeField> euler = fs_add(f, fs_add(f, parse_field(f, vars, "x1 ∂x1"), parse_field(f, vars, "x2 ∂x2")),
                                      parse_field(f, vars, "x3 ∂x3"));
  std::vector<FieldSum<PrimeField>> diag = {r.components.at(0)[0], r.components.at(0)[4], r.components.at(0)[8]};
  CHECK(fs_add(f, fs_add(f, diag[0], diag[1]), diag[2]) == fs_scale(f, euler, f.neg(1)));

  const auto g2 = seed_matrix(f, "gl", 2);
  const auto r2 = embed_depth1(f, g2, module_build(f, g2, "phi1"));
  // [X_{E12}, d_k] = sum_i (E12)_ik d_i: column 2 is e1
  const auto& x12 = r2.components.at(0)[1];
  CHECK(vf_bracket(f, r2.vars, x12, r2.components.at(-1)[1]) == r2.components.at(-1)[0]);
  CHECK(vf_bracket(f, r2.vars, x12, r2.components.at(-1)[0]).is_zero());

  // unsigned embedding is an anti-homomorphism
  const auto a = g2.basis[1], b = g2.basis[2];
  const auto xa = fs_scale(f, linear_field(f, r2.vars, a), f.neg(1));
  const auto xb = fs_scale(f, linear_field(f, r2.vars, b), f.neg(1));
  const auto xab = fs_scale(f, linear_field(f, r2.vars, a.commutator(f, b)), f.neg(1));
  CHECK(vf_bracket(f, r2.vars, xa, xb) == fs_scale(f, xab, f.neg(1)));
}

TEST_CASE("embedding round-trip reproduces action matrices") {
  PrimeField f(11);
  const auto g0 = seed_matrix(f, "gl", 3);
  const auto v = module_build(f, g0, "wedge2");
  const auto r = embed_depth1(f, g0, v);
  const auto& neg = r.components.at(-1);
  for (std::size_t a = 0; a < v.action.size(); ++a) {
    for (std::size_t k = 0; k < v.dim; ++k) {
      FieldSum<PrimeField> expect;
      for (std::size_t i = 0; i < v.dim; ++i) expect = fs_add(f, expect, fs_scale(f, neg[i], v.action[a](i, k)));
      CHECK(vf_bracket(f, r.vars, r.components.at(0)[a], neg[k]) == expect);
    }
  }
}

TEST_CASE("Heisenberg lift") {
  PrimeField f(11);
  const auto g0 = with_center(f, seed_matrix(f, "sp", 2));
  const auto v = module_build(f, g0, "phi1");
  const auto r = heisenberg_lift(f, g0, v, symplectic_form(f, v));
  const auto& t = r.components.at(-1);
  REQUIRE(t.size() == 2);
  CHECK(weight_grade(r.vars, t[0]) == -1);
  CHECK(weight_grade(r.vars, r.components.at(-2)[0]) == -2);
  const auto pq = vf_bracket(f, r.vars, t[0], t[1]);
  CHECK((pq == r.components.at(-2)[0] || pq == fs_scale(f, r.components.at(-2)[0], f.neg(1))));
  CHECK(vf_bracket(f, r.vars, t[0], t[0]).is_zero());
  CHECK(r.components.at(0).size() == 4);

  // valid at p = 2 as well, where sp(4) already contains the identity
  PrimeField f2(2);
  CHECK(code_of<PrimeField>([&] { with_center(f2, seed_matrix(f2, "sp", 4)); }) == ErrorCode::BadSize);
  const auto g2 = seed_matrix(f2, "sp", 4);
  const auto v2 = module_build(f2, g2, "phi1");
  CHECK_NOTHROW(heisenberg_lift(f2, g2, v2, symplectic_form(f2, v2)));
}

TEST_CASE("g(2) seed") {
  PrimeField f(11);
  const auto g0 = seed_matrix(f, "gl", 2);
  const auto v = module_build(f, g0, "sym3_of_gl2");
  CHECK(invariant_forms(f, v).size() == 1);
  const auto r = heisenberg_lift(f, g0, v, symplectic_form(f, v));
  CHECK(r.components.at(-1).size() == 4);
  CHECK(r.components.at(0).size() == 4);
}

TEST_CASE("lift errors") {
  PrimeField f(11);
  const auto g0 = seed_matrix(f, "gl", 2);
  const auto v = module_build(f, g0, "phi1");
  DenseMatrix<PrimeField> zero(f, 2, 2);
  CHECK(code_of<PrimeField>([&] { heisenberg_lift(f, g0, v, zero); }) == ErrorCode::FormDegenerate);
  // gl(2) on K^2 preserves the area form only up to the trace: conformal, accepted
  CHECK_NOTHROW(heisenberg_lift(f, g0, v, symplectic_form(f, v)));
  const auto g3 = seed_matrix(f, "gl", 4);
  const auto v4 = module_build(f, g3, "phi1");
  auto w = DenseMatrix<PrimeField>(f, 4, 4);
  w(0, 3) = 1;
  w(3, 0) = f.neg(1);
  w(1, 2) = 1;
  w(2, 1) = f.neg(1);
  CHECK(code_of<PrimeField>([&] { heisenberg_lift(f, g3, v4, w); }) == ErrorCode::NotConformal);
}
