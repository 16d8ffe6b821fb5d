#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace modlie;
using oracle::Bits;

namespace {

template <class Field>
SCAlgebra<Field> matrix_lie(const Field& f, const std::string& family, std::size_t n) {
  return from_matrix_algebra(f, seed_matrix(f, family, n));
}

template <class Field>
std::size_t index_of(const SCAlgebra<Field>& a, const std::string& label) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.basis()[i].name == label) return i;
  }
  FAIL("no basis label " << label);
  return 0;
}

/// Coordinates of a matrix in the basis of a matrix algebra.
template <class Field>
Vector<Field> matrix_coords(const Field& f, const MatrixAlgebra<Field>& m, const DenseMatrix<Field>& x) {
  const BasisSpan<Field> span(f, m.n * m.n, detail::flatten_all(m.basis));
  const auto c = span.coordinates(x.flatten());
  REQUIRE(c);
  return *c;
}

}  // namespace

TEST_CASE("axioms of sl(2) and a corrupted copy") {
  PrimeField f(7);
  const auto sl2 = matrix_lie(f, "sl", 2);
  const auto rep = verify_axioms(sl2);
  CHECK(rep.ok);
  CHECK(rep.checked > 0);

  // [E1_2, E2_1] = H1 + E1_2; rescaling the H1 coefficient alone would still be a Lie algebra
  auto bad = sl2;
  const auto e = index_of(sl2, "E1_2"), fi = index_of(sl2, "E2_1"), h = index_of(sl2, "H1");
  auto c = to_dense(f, sl2.bracket(e, fi), 3);
  c[e] = f.add(c[e], f.one());
  bad.set_bracket(e, fi, to_sparse(f, c));
  const auto broken = verify_axioms(bad);
  REQUIRE_FALSE(broken.ok);
  CHECK(broken.violations.front().find("Jacobi") != std::string::npos);
  bool witness = false;
  for (const auto& v : broken.violations) witness = witness || (v.find("E1_2") != std::string::npos && v.find("E2_1") != std::string::npos && v.find("H1") != std::string::npos);
  CHECK(witness);
}

TEST_CASE("axioms of classical matrix algebras across primes") {
  for (const std::uint64_t p : {2, 3, 5, 7, 11}) {
    PrimeField f(p);
    CHECK(verify_axioms(matrix_lie(f, "gl", 3)).ok);
    CHECK(verify_axioms(matrix_lie(f, "sl", 3)).ok);
    CHECK(verify_axioms(matrix_lie(f, "sp", 4)).ok);
    if (p != 2) CHECK(verify_axioms(matrix_lie(f, "o", 5)).ok);
  }
}

TEST_CASE("derived algebra and center") {
  PrimeField f(5);
  const auto [d, z] = derived_and_center(matrix_lie(f, "gl", 2));
  CHECK(d.dim() == 3);
  CHECK(z.dim() == 1);

  // Heisenberg from the negative part of the contact prolong
  PrimeField f11(11);
  const auto g0 = with_center(f11, seed_matrix(f11, "sp", 2));
  const auto v = module_build(f11, g0, "phi1");
  auto P = complete_prolong(f11, heisenberg_lift(f11, g0, v, symplectic_form(f11, v)), 1);
  std::erase_if(P.components, [](const auto& kv) { return kv.first >= 0; });
  const auto heis = from_fields(f11, P);
  REQUIRE(heis.dim() == 3);
  const auto [hd, hz] = derived_and_center(heis);
  CHECK(hd.dim() == 1);
  CHECK(hd == hz);
  CHECK(heis.basis()[hd.pivots()[0]].degree == -2);

  SCAlgebra<PrimeField> ab(f, {{"a", false, 0}, {"b", false, 0}});
  const auto [ad, az] = derived_and_center(ab);
  CHECK(ad.dim() == 0);
  CHECK(az.dim() == 2);
}

TEST_CASE("simple cores") {
  PrimeField f5(5), f2(2), f3(3);
  const auto core5 = simple_core(matrix_lie(f5, "gl", 2));
  CHECK(core5.dim() == 3);
  CHECK(is_simple(core5).simple);
  CHECK(simple_core(matrix_lie(f2, "gl", 2)).dim() == 0);
  const auto core3 = simple_core(matrix_lie(f3, "sl", 3));
  CHECK(core3.dim() == 7);
  CHECK(is_simple(core3).simple);
  CHECK(simple_core(core3) == core3);
  CHECK(simple_core(core5) == core5);
}

TEST_CASE("simplicity decisions") {
  PrimeField f7(7), f2(2);
  const auto sl3 = is_simple(matrix_lie(f7, "sl", 3));
  CHECK(sl3.simple);
  CHECK_FALSE(sl3.transcript.empty());

  const auto gl2 = matrix_lie(f7, "gl", 2);
  const auto g = is_simple(gl2);
  CHECK_FALSE(g.simple);
  REQUIRE_FALSE(g.ideal.empty());
  const Subspace<PrimeField> ideal(f7, 4, g.ideal);
  // every proper ideal of gl(2) at p = 7 is sl(2) or the scalars
  const auto [d, z] = derived_and_center(gl2);
  CHECK((ideal == d || ideal == z));

  const auto sl2 = matrix_lie(f2, "sl", 2);
  const auto s = is_simple(sl2);
  CHECK_FALSE(s.simple);
  // the certificate is some proper ideal; all of them contain h, which spans one
  const auto hvec = sl2.unit(index_of(sl2, "H1"));
  const Subspace<PrimeField> hs(f2, 3, s.ideal);
  CHECK(hs.dim() < 3);
  CHECK(hs.contains(hvec));
  CHECK(center_subspace(sl2) == Subspace<PrimeField>(f2, 3, {hvec}));

  SCAlgebra<PrimeField> one(f7, {{"x", false, 0}});
  CHECK_FALSE(is_simple(one).simple);
}

TEST_CASE("is_simple agrees with brute force over GF(2)") {
  PrimeField f(2);
  std::size_t tried = 0, simple = 0, super = 0;
  auto compare = [&](const Bits& b, std::uint64_t seed) {
    const auto a = oracle::to_sc(f, b);
    if (!verify_axioms(a).ok) return;
    ++tried;
    super += a.has_odd();
    const bool expected = oracle::brute_simple(b);
    simple += expected;
    INFO("dim " << b.n << " seed " << seed);
    CHECK(is_simple(a, seed).simple == expected);
  };

  // every table in dims 2 and 3, every parity pattern
  std::uint64_t seed = 1;
  for (std::size_t n = 2; n <= 3; ++n) {
    for (unsigned pm = 0; pm < (1u << n); ++pm) oracle::for_each_table(n, pm, [&](const Bits& b) { compare(b, seed++); });
  }
  CHECK(simple > 0);

  // random tables in dim 4
  std::mt19937_64 rng(2024);
  const std::size_t small = tried;
  for (int iter = 0; iter < 20000 && tried < small + 200; ++iter) compare(oracle::random_bits(rng, 4, iter % 2 == 1), 1 + iter);
  CHECK(tried >= small + 100);
  CHECK(super > 0);
}

TEST_CASE("regrading") {
  PrimeField f(7);
  const auto m = seed_matrix(f, "sp", 4);
  const auto sp4 = from_matrix_algebra(f, m);
  DenseMatrix<PrimeField> h(f, 4, 4);
  h(0, 0) = 1;
  h(3, 3) = f.neg(1);
  const auto grading = regrade(sp4, matrix_coords(f, m, h));
  std::map<long long, std::size_t> dims;
  for (const auto& [k, vs] : grading) dims[k] = vs.size();
  CHECK(dims == std::map<long long, std::size_t>{{-2, 1}, {-1, 2}, {0, 4}, {1, 2}, {2, 1}});

  const auto g = regraded(sp4, grading);
  CHECK(verify_axioms(g).ok);
  // brackets add degrees
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i; j < g.dim(); ++j) {
      for (const auto& [k, c] : g.bracket(i, j)) CHECK(g.basis()[k].degree == g.basis()[i].degree + g.basis()[j].degree);
    }
  }
  // flatten back to the original basis reproduces the constants
  std::vector<Vector<PrimeField>> rows;
  for (const auto& [k, vs] : grading) rows.insert(rows.end(), vs.begin(), vs.end());
  std::vector<Vector<PrimeField>> inverse;
  const BasisSpan<PrimeField> span(f, sp4.dim(), rows);
  for (std::size_t i = 0; i < sp4.dim(); ++i) inverse.push_back(*span.coordinates(sp4.unit(i)));
  CHECK(change_basis(g, inverse, sp4.basis()) == sp4);

  // e + 3f in sl(2): eigenvalues +-2 sqrt(3), 3 is not a square mod 7
  const auto sl2 = matrix_lie(f, "sl", 2);
  auto x = sl2.unit(index_of(sl2, "E1_2"));
  x[index_of(sl2, "E2_1")] = 3;
  CHECK_THROWS_MATCHES(regrade(sl2, x), Error, Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::NonIntegralSpectrum; }));
  // nilpotent e is not diagonalizable
  CHECK_THROWS_MATCHES(regrade(sl2, sl2.unit(index_of(sl2, "E1_2"))), Error, Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::NotDiagonalizable; }));

  RationalField q;
  const auto gl2 = matrix_lie(q, "gl", 2);
  auto third = gl2.unit(0);
  third[0] = mpq_class(1, 3);
  CHECK_THROWS_MATCHES(regrade(gl2, third), Error, Catch::Matchers::Predicate<Error>([](const Error& e) { return e.code() == ErrorCode::NonIntegralSpectrum; }));
  auto half = gl2.unit(0);
  half[0] = mpq_class(1, 2);
  half[3] = mpq_class(-1, 2);
  const auto qg = regrade(gl2, half);
  CHECK(qg.size() == 3);
  CHECK(qg.at(0).size() == 2);
}

TEST_CASE("euler regrading is the polynomial degree") {
  PrimeField f(11);
  const auto P = complete_prolong(f, embed_depth1(f, seed_matrix(f, "gl", 2), module_build(f, seed_matrix(f, "gl", 2), "sym2")), 2);
  const auto a = from_fields(f, P);
  const auto euler = parse_field(f, P.vars, "x1 ∂x1 + x2 ∂x2 + x3 ∂x3");
  const FieldSpan<PrimeField> g0(f, P.components.at(0));
  const auto c = g0.coordinates(euler);
  REQUIRE(c);
  Vector<PrimeField> h(a.dim(), 0);
  std::size_t off = P.components.at(-1).size();
  for (std::size_t i = 0; i < c->size(); ++i) h[off + i] = (*c)[i];
  const auto grading = regrade(a, h);
  for (const auto& [k, vs] : grading) CHECK(vs.size() == P.dim(static_cast<int>(k)));
}

TEST_CASE("signatures of coincidences") {
  PrimeField f(11);
  const auto sp4 = matrix_lie(f, "sp", 4);
  const auto o5 = matrix_lie(f, "o", 5);
  CHECK(signature(sp4) == signature(o5));
  const auto prolonged = from_fields(f, complete_prolong(f, embed_depth1(f, seed_matrix(f, "gl", 2), module_build(f, seed_matrix(f, "gl", 2), "sym2")), 2));
  CHECK(verify_axioms(prolonged).ok);
  CHECK(signature(prolonged) == signature(sp4));
  CHECK(signature(prolonged).graded_dims == std::map<int, std::size_t>{{-1, 3}, {0, 4}, {1, 3}});

  const auto co4 = with_center(f, seed_matrix(f, "o", 4));
  const auto o6 = from_fields(f, complete_prolong(f, embed_depth1(f, co4, module_build(f, co4, "phi1")), 2));
  CHECK(signature(o6) == signature(matrix_lie(f, "sl", 4)));
  CHECK(signature(o6) == signature(matrix_lie(f, "o", 6)));
  CHECK_FALSE(signature(o6) == signature(sp4));

  // gl(2) vs sl(2) + center: equal, the signature is not a complete invariant
  const auto sl2 = matrix_lie(f, "sl", 2);
  auto labels = sl2.basis();
  labels.push_back({"z", false, 0});
  SCAlgebra<PrimeField> sum(f, labels);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) sum.set_bracket(i, j, sl2.bracket(i, j));
  }
  CHECK(signature(sum) == signature(matrix_lie(f, "gl", 2)));
}

TEST_CASE("from_fields round trip") {
  PrimeField f(7);
  const auto g0 = seed_matrix(f, "gl", 1);
  const auto P = complete_prolong(f, embed_depth1(f, g0, module_build(f, g0, "phi1")), 6);
  const auto H = partial_prolong(f, P, P.components.at(1), 6);
  const auto sl2 = from_fields(f, H);
  CHECK(sl2.dim() == 3);
  CHECK(verify_axioms(sl2).ok);
  CHECK(signature(sl2) == signature(matrix_lie(f, "sl", 2)));
  CHECK(is_simple(sl2).simple);

  const auto W = from_fields(f, P);
  CHECK(W.dim() == 7);
  CHECK(verify_axioms(W).ok);
  // constants reproduce vf_bracket
  std::vector<FieldSum<PrimeField>> all;
  for (const auto& [k, xs] : P.components) all.insert(all.end(), xs.begin(), xs.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      FieldSum<PrimeField> expect;
      for (const auto& [k, c] : W.bracket(i, j)) expect = fs_add(f, expect, fs_scale(f, all[k], c));
      CHECK(fs_sub(f, vf_bracket(f, P.vars, all[i], all[j]), expect).is_zero());
    }
  }

  // g_-1 + gl(2) with the positive part dropped is still closed
  const auto g2 = seed_matrix(f, "gl", 2);
  auto Q = complete_prolong(f, embed_depth1(f, g2, module_build(f, g2, "phi1")), 1);
  std::erase_if(Q.components, [](const auto& kv) { return kv.first > 0; });
  CHECK(from_fields(f, Q).dim() == 6);
}
