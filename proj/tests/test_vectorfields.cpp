#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "modlie/vfield.hpp"

using namespace modlie;

namespace {

template <class Field>
FieldSum<Field> F(const Field& f, const Variables& v, const std::string& s) {
  return parse_field(f, v, s);
}

/// Random field that is homogeneous in parity and degree.
template <class Field>
FieldSum<Field> random_homogeneous(const Field& f, const Variables& v, std::mt19937_64& rng, int deg, bool parity) {
  std::vector<typename FieldSum<Field>::Term> t;
  for (std::size_t dir = 0; dir < v.size(); ++dir) {
    for (const auto& m : monomials_of_weight(v, deg + v.weights[dir])) {
      FieldKey k{static_cast<std::uint32_t>(dir), m};
      if (key_parity(v, k) != parity || rng() % 3 != 0) continue;
      t.emplace_back(k, f.random(rng));
    }
  }
  return FieldSum<Field>::from_terms(f, t);
}

}  // namespace

TEST_CASE("bracket examples") {
  PrimeField f(7);
  auto v = Variables::standard(1, 0, 7);
  v.names = {"x"};
  CHECK(vf_bracket(f, v, F(f, v, "∂x"), F(f, v, "x^(2) ∂x")) == F(f, v, "x ∂x"));
  CHECK(vf_bracket(f, v, F(f, v, "x ∂x"), F(f, v, "x ∂x")).is_zero());

  auto v3 = Variables::standard(3, 0, 7);
  const auto euler = F(f, v3, "x1 ∂x1 + x2 ∂x2 + x3 ∂x3");
  const auto x = F(f, v3, "x1^(2) ∂x1 + 3 x2 x3 ∂x1");
  CHECK(vf_bracket(f, v3, euler, x) == x);
}

TEST_CASE("squaring at p = 2") {
  PrimeField f(2);
  auto v = Variables::standard(1, 1, 2);
  v.names = {"x", "xi"};
  CHECK(vf_square(f, v, F(f, v, "xi ∂x")).is_zero());
  CHECK(vf_square(f, v, F(f, v, "∂xi + xi ∂x")) == F(f, v, "∂x"));
  CHECK(vf_square(f, v, F(f, v, "x ∂xi")).is_zero());

  try {
    vf_square(f, v, F(f, v, "x ∂x"));
    FAIL("even field squared");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotOdd);
  }
  PrimeField f3(3);
  try {
    vf_square(f3, v, F(f3, v, "∂xi"));
    FAIL("p = 3 squaring");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongChar);
  }
}

TEST_CASE("weight grading") {
  PrimeField f(11);
  Variables v = Variables::standard(2, 0, 11);
  v.even = 3;
  v.heights = {1, 1, 1};
  v.names = {"t", "p", "q"};
  v.weights = {2, 1, 1};
  CHECK(weight_grade(v, F(f, v, "∂t")) == -2);
  CHECK(weight_grade(v, F(f, v, "q ∂t")) == -1);
  auto v1 = Variables::standard(1, 0, 11);
  CHECK(weight_grade(v1, F(f, v1, "x1^(2) ∂x1")) == 1);
  try {
    weight_grade(v, F(f, v, "∂t + ∂p"));
    FAIL("inhomogeneous accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHomogeneous);
  }
  CHECK_THROWS_AS(VectorField<PrimeField>::make(v, F(f, v, "∂t + ∂p")), Error);
}

TEST_CASE("super anticommutativity, Jacobi and grading") {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {3, 5, 7}) {
    PrimeField f(p);
    auto v = Variables::standard(2, 2, p);
    v.weights = {1, 2, 1, 1};
    for (int s = 0; s < 200; ++s) {
      const int dx = static_cast<int>(rng() % 3) - 1, dy = static_cast<int>(rng() % 3) - 1;
      const bool px = rng() & 1, py = rng() & 1;
      const auto x = random_homogeneous(f, v, rng, dx, px);
      const auto y = random_homogeneous(f, v, rng, dy, py);
      auto yx = vf_bracket(f, v, y, x);
      if (!(px && py)) yx = fs_scale(f, yx, f.neg(1));
      CHECK(vf_bracket(f, v, x, y) == yx);
      const auto xy = vf_bracket(f, v, x, y);
      if (!xy.is_zero()) {
        CHECK(weight_grade(v, xy) == dx + dy);
        CHECK(fs_parity(v, xy) == (px != py));
      }
    }
    for (int s = 0; s < 100; ++s) {
      const bool px = rng() & 1, py = rng() & 1, pz = rng() & 1;
      const auto x = random_homogeneous(f, v, rng, static_cast<int>(rng() % 2), px);
      const auto y = random_homogeneous(f, v, rng, static_cast<int>(rng() % 2), py);
      const auto z = random_homogeneous(f, v, rng, -1, pz);
      // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
      const auto lhs = vf_bracket(f, v, x, vf_bracket(f, v, y, z));
      auto second = vf_bracket(f, v, y, vf_bracket(f, v, x, z));
      if (px && py) second = fs_scale(f, second, f.neg(1));
      CHECK(lhs == fs_add(f, vf_bracket(f, v, vf_bracket(f, v, x, y), z), second));
    }
  }
}

TEST_CASE("p = 2 squaring identities") {
  std::mt19937_64 rng(9);
  PrimeField f(2);
  auto v = Variables::standard(2, 3, 2, std::vector<std::uint32_t>{2, 2});
  for (int s = 0; s < 100; ++s) {
    const auto x = random_homogeneous(f, v, rng, static_cast<int>(rng() % 2), true);
    const auto y = random_homogeneous(f, v, rng, static_cast<int>(rng() % 2), true);
    const auto w = random_homogeneous(f, v, rng, static_cast<int>(rng() % 2), rng() & 1);
    // polarization
    const auto pol = fs_sub(f, fs_sub(f, vf_square(f, v, fs_add(f, x, y)), vf_square(f, v, x)), vf_square(f, v, y));
    CHECK(pol == vf_bracket(f, v, x, y));
    // [x^2, w] = [x, [x, w]]
    CHECK(vf_bracket(f, v, vf_square(f, v, x), w) == vf_bracket(f, v, x, vf_bracket(f, v, x, w)));
    CHECK(vf_square(f, v, fs_scale(f, x, 1)) == vf_square(f, v, x));
    CHECK(vf_square(f, v, fs_scale(f, x, 0)).is_zero());
  }
}

TEST_CASE("rendering round-trip") {
  PrimeField f(5);
  auto v = Variables::standard(2, 2, 5);
  const auto x = F(f, v, "3 x1^(2) xi1 ∂x2 + ∂xi2 + 4 x1 x2 ∂x1");
  CHECK(parse_field(f, v, render_field(f, v, x)) == x);
  CHECK(render_field(f, v, FieldSum<PrimeField>()) == "0");
  CHECK(render_field(f, v, F(f, v, "∂x1")) == "∂x1");
}

TEST_CASE("field span residues and coordinates") {
  PrimeField f(7);
  auto v = Variables::standard(2, 0, 7);
  std::vector<FieldSum<PrimeField>> basis = {F(f, v, "x1 ∂x1 + x2 ∂x2"), F(f, v, "x1 ∂x2"), F(f, v, "x1 ∂x2 + x2 ∂x1")};
  FieldSpan<PrimeField> span(f, basis);
  CHECK(span.dim() == 3);
  const auto target = F(f, v, "2 x1 ∂x1 + 2 x2 ∂x2 + 3 x2 ∂x1");
  auto c = span.coordinates(target);
  REQUIRE(c);
  CHECK(fs_combine(f, basis, *c) == target);
  CHECK_FALSE(span.contains(F(f, v, "x2 ∂x2")));
  CHECK(span.residue(F(f, v, "x1 ∂x1")).terms().size() == 1);
}

TEST_CASE("closure check") {
  PrimeField f(7);
  auto v = Variables::standard(2, 0, 7);
  std::map<int, std::vector<FieldSum<PrimeField>>> gl2;
  gl2[-1] = {F(f, v, "∂x1"), F(f, v, "∂x2")};
  gl2[0] = {F(f, v, "x1 ∂x1"), F(f, v, "x2 ∂x1"), F(f, v, "x1 ∂x2"), F(f, v, "x2 ∂x2")};
  CHECK(closure_check(f, v, gl2).ok);
  CHECK(closure_check(f, v, std::map<int, std::vector<FieldSum<PrimeField>>>{}).ok);
  // sl(2)-part plus the degree-1 piece of sl(3) fails once g_0 loses the Euler field
  auto broken = gl2;
  broken[0] = {F(f, v, "x2 ∂x1"), F(f, v, "x1 ∂x2"), F(f, v, "x1 ∂x1 + 6 x2 ∂x2")};
  broken[1] = {F(f, v, "x1^(2) ∂x1 + x1 x2 ∂x2"), F(f, v, "x1 x2 ∂x1 + x2^(2) ∂x2")};
  const auto r = closure_check(f, v, broken);
  CHECK_FALSE(r.ok);
  CHECK(r.i == -1);
  CHECK(r.j == 1);
}
