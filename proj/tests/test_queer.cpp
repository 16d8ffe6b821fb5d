#include <catch2/catch_amalgamated.hpp>

#include "modlie/queer.hpp"

using namespace modlie;

namespace {

template <class Field>
std::size_t index_of(const SCAlgebra<Field>& a, const std::string& label) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.basis()[i].name == label) return i;
  }
  FAIL("no basis label " << label);
  return 0;
}

template <class Field>
MatrixAlgebra<Field> scalars(const Field& f, std::size_t n) {
  MatrixAlgebra<Field> m;
  m.n = n;
  m.basis.push_back(DenseMatrix<Field>::identity(f, n));
  m.labels.push_back("I");
  return m;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("Q(gl(n)) is a Lie superalgebra") {
  for (const std::uint64_t p : {3, 5}) {
    PrimeField f(p);
    for (const std::size_t n : {1, 2, 3}) {
      const auto q = queerify_assoc(f, seed_matrix(f, "gl", n));
      CHECK(q.dim_even() == n * n);
      CHECK(q.dim_odd() == n * n);
      const auto rep = verify_axioms(q);
      INFO("p = " << p << ", n = " << n << (rep.violations.empty() ? "" : ": " + rep.violations.front()));
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("Q brackets by formula") {
  PrimeField f(5);
  const auto q = queerify_assoc(f, seed_matrix(f, "gl", 2));
  const auto e11 = index_of(q, "E1_1"), pe11 = index_of(q, "ΠE1_1");
  CHECK(q.bracket(pe11, pe11) == SparseVector<PrimeField>{{e11, 3}});
  const auto pe12 = index_of(q, "ΠE1_2"), e12 = index_of(q, "E1_2");
  // [E1_1, ΠE1_2] = Π[E1_1, E1_2] = ΠE1_2
  CHECK(q.bracket(e11, pe12) == SparseVector<PrimeField>{{pe12, 1}});
  CHECK(q.bracket(e11, e12) == SparseVector<PrimeField>{{e12, 1}});

  PrimeField f3(3);
  const auto qi = queerify_assoc(f3, scalars(f3, 2));
  CHECK(qi.dim_even() == 1);
  CHECK(qi.dim_odd() == 1);
  // [ΠI, ΠI] = -2I = I at p = 3
  CHECK(qi.bracket(1, 1) == SparseVector<PrimeField>{{0, 1}});
  CHECK(verify_axioms(qi).ok);
}

TEST_CASE("Q requires an associative span") {
  PrimeField f(5);
  CHECK(code_of([&] { queerify_assoc(f, seed_matrix(f, "sl", 2)); }) == ErrorCode::NotClosed);
}

TEST_CASE("Q at p = 2 carries squares") {
  PrimeField f(2);
  const auto q = queerify_assoc(f, seed_matrix(f, "gl", 2));
  CHECK(verify_axioms(q).ok);
  const auto e11 = index_of(q, "E1_1"), pe11 = index_of(q, "ΠE1_1");
  CHECK(q.square(pe11) == SparseVector<PrimeField>{{e11, 1}});
  CHECK(q.bracket(pe11, pe11).empty());
}

TEST_CASE("p = 2 queerification") {
  PrimeField f(2);
  for (const auto& [family, n] : std::vector<std::pair<std::string, std::size_t>>{{"gl", 2}, {"gl", 3}, {"sl", 2}}) {
    const auto g = seed_matrix(f, family, n);
    const auto q = queerify_p2(f, g);
    const auto d = g.dim();
    CHECK(q.dim_even() == d);
    CHECK(q.dim_odd() == d);
    const auto rep = verify_axioms(q);
    INFO(family << n << (rep.violations.empty() ? "" : ": " + rep.violations.front()));
    CHECK(rep.ok);

    // even part is g itself
    const auto lie = from_matrix_algebra(f, g);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) CHECK(q.bracket(i, j) == lie.bracket(i, j));
    }
    // [Px, Py] = (P(x + y))^2 - (Px)^2 - (Py)^2
    for (std::size_t i = d; i < 2 * d; ++i) {
      for (std::size_t j = i + 1; j < 2 * d; ++j) {
        auto sum = q.unit(i);
        sum[j] = 1;
        auto pol = q.square(sum);
        axpy(f, pol, f.one(), q.square(q.unit(i)));
        axpy(f, pol, f.one(), q.square(q.unit(j)));
        CHECK(pol == to_dense(f, q.bracket(i, j), q.dim()));
      }
    }
    // the simple core is simple or zero
    const auto core = simple_core(q);
    INFO("core dim " << core.dim());
    if (core.dim() > 0) CHECK(is_simple(core).simple);
  }
}

TEST_CASE("p = 2 queerification rejections") {
  PrimeField f(2), f3(3);
  MatrixAlgebra<PrimeField> m;
  m.n = 2;
  auto a = DenseMatrix<PrimeField>::unit(f, 2, 0, 1);
  a(1, 0) = 1;
  m.basis.push_back(a);
  m.labels.push_back("E1_2+E2_1");
  try {
    queerify_p2(f, m);
    FAIL("expected NotSquaringClosed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSquaringClosed);
    CHECK(std::string(e.what()).find("[1 0; 0 1]") != std::string::npos);
  }
  CHECK(code_of([&] { queerify_p2(f3, seed_matrix(f3, "gl", 2)); }) == ErrorCode::WrongChar);
}
