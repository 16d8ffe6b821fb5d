#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "modlie/field.hpp"
#include "modlie/linalg.hpp"

using namespace modlie;

namespace {

std::uint64_t factorial_binom_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (b > a) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  mpz_class m = r % static_cast<unsigned long>(p);
  return m.get_ui();
}

}  // namespace

TEST_CASE("inverse in GF(p)") {
  PrimeField f7(7);
  CHECK(ff_inv(f7, 1) == 1);
  CHECK(ff_inv(f7, 3) == 5);
  PrimeField f5(5);
  CHECK_THROWS_AS(ff_inv(f5, 0), Error);
  try {
    ff_inv(f5, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroInverse);
  }
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 1000003}) {
    PrimeField f(p);
    for (std::uint64_t a = 1; a < std::min<std::uint64_t>(p, 50); ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  }
}

TEST_CASE("non-prime characteristic is rejected") {
  for (std::uint64_t p : {0, 1, 4, 6, 9, 15, 561}) {
    try {
      PrimeField f(p);
      FAIL("accepted " << p);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadChar);
    }
  }
  CHECK_THROWS_AS(lucas_binom(4, 2, 6), Error);
}

TEST_CASE("lucas binomials agree with factorials") {
  CHECK(lucas_binom(4, 2, 2) == 0);
  CHECK(lucas_binom(7, 3, 5) == 0);
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    for (std::uint64_t k = 1; k < p; ++k) CHECK(lucas_binom(p, k, p) == 0);
    for (std::uint64_t a = 0; a <= 50; ++a) {
      for (std::uint64_t b = 0; b <= a + 1; ++b) {
        INFO("a=" << a << " b=" << b << " p=" << p);
        CHECK(lucas_binom(a, b, p) == factorial_binom_mod(a, b, p));
      }
    }
  }
}

TEST_CASE("field axioms hold exhaustively for small p") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    PrimeField f(p);
    for (std::uint64_t a = 0; a < p; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      CHECK(f.mul(a, 1) == a);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (std::uint64_t b = 0; b < p; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
        for (std::uint64_t c = 0; c < p; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("scalar parsing and rendering") {
  PrimeField f(11);
  CHECK(f.parse("-1") == 10);
  CHECK(f.parse("1/2") == 6);
  CHECK_THROWS_AS(f.parse("x"), Error);
  RationalField q;
  CHECK(q.to_string(q.parse("6/4")) == "3/2");
  CHECK(q.to_string(q.from_int(-2)) == "-2/1");
  CHECK_THROWS_AS(q.parse("1/0"), Error);
}

TEST_CASE("nullspace examples") {
  PrimeField f7(7);
  auto id = Matrix<PrimeField>::from_rows(f7, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(nullspace(f7, id).empty());

  PrimeField f2(2);
  auto ns2 = nullspace(f2, Matrix<PrimeField>::from_rows(f2, 2, {{1, 1}}));
  REQUIRE(ns2.size() == 1);
  CHECK(ns2[0] == Vector<PrimeField>{1, 1});

  PrimeField f5(5);
  auto m = Matrix<PrimeField>::from_rows(f5, 2, {{1, 2}, {2, 4}});
  auto ns5 = nullspace(f5, m);
  REQUIRE(ns5.size() == 1);
  CHECK(is_zero_vector(f5, m.apply(f5, ns5[0])));

  CHECK(nullspace(f5, Matrix<PrimeField>(0, 3)).size() == 3);
}

TEST_CASE("rank-nullity on all 3x3 matrices over GF(2)") {
  PrimeField f(2);
  for (unsigned bits = 0; bits < 512; ++bits) {
    std::vector<Vector<PrimeField>> rows(3, Vector<PrimeField>(3, 0));
    for (unsigned k = 0; k < 9; ++k) rows[k / 3][k % 3] = bits >> k & 1U;
    auto m = Matrix<PrimeField>::from_rows(f, 3, rows);
    auto ns = nullspace(f, m);
    CHECK(rank(f, m) + ns.size() == 3);
    for (const auto& v : ns) CHECK(is_zero_vector(f, m.apply(f, v)));
  }
}

TEST_CASE("sparse and dense elimination agree") {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {2, 3, 101}) {
    PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 30, c = 1 + rng() % 30;
      std::vector<typename Matrix<PrimeField>::Entry> entries;
      const unsigned density = 1 + rng() % 60;
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
          if (rng() % 100 < density) entries.push_back({i, j, f.random(rng)});
        }
      }
      auto m = Matrix<PrimeField>::from_entries(f, r, c, entries);
      auto a = rref(f, m);
      auto b = rref_dense(f, m);
      CHECK(a.pivots == b.pivots);
      CHECK(a.rows == b.rows);
      auto ns = nullspace(f, m);
      CHECK(ns.size() + a.rank() == c);
      for (const auto& v : ns) CHECK(is_zero_vector(f, m.apply(f, v)));
    }
  }
}

TEST_CASE("rational elimination") {
  RationalField q;
  using V = Vector<RationalField>;
  auto m = Matrix<RationalField>::from_rows(q, 3, {V{1, 2, 3}, V{2, 4, 6}, V{1, 0, mpq_class(1, 2)}});
  CHECK(rank(q, m) == 2);
  auto ns = nullspace(q, m);
  REQUIRE(ns.size() == 1);
  CHECK(is_zero_vector(q, m.apply(q, ns[0])));
}

TEST_CASE("subspace membership and coordinates") {
  PrimeField f(5);
  Subspace<PrimeField> s(f, 3, {{1, 1, 0}, {0, 1, 1}});
  CHECK(s.dim() == 2);
  CHECK(s.contains({1, 2, 1}));
  CHECK_FALSE(s.contains({0, 0, 1}));
  auto c = s.coordinates({2, 3, 1});
  REQUIRE(c);
  Vector<PrimeField> back(3, 0);
  for (std::size_t i = 0; i < s.dim(); ++i) axpy(f, back, (*c)[i], s.basis()[i]);
  CHECK(back == Vector<PrimeField>{2, 3, 1});
}

TEST_CASE("solve") {
  PrimeField f(7);
  auto a = Matrix<PrimeField>::from_rows(f, 2, {{1, 2}, {3, 4}});
  auto x = solve(f, a, {5, 6});
  REQUIRE(x);
  CHECK(a.apply(f, *x) == Vector<PrimeField>{5, 6});
  auto sing = Matrix<PrimeField>::from_rows(f, 2, {{1, 2}, {2, 4}});
  CHECK_FALSE(solve(f, sing, {1, 0}));
}
