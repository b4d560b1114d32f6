#include "doctest.h"
#include "support/fixtures.hpp"

using namespace qpcalc;
using namespace qpcalc::testing;

namespace {

CommJet comm(std::vector<std::string> vars, int n, std::initializer_list<std::pair<CommJet::Monomial, Rational>> terms) {
  CommJet f(std::move(vars), n);
  for (const auto& [m, c] : terms) f.add_term(m, c);
  return f;
}

}  // namespace

TEST_CASE("abelianization of the Laufer potential") {
  const auto w = corpus_potential("laufer");
  auto f = abelianize(w.rep(), *w.quiver().find_node("2"));
  CHECK(f.variables() == std::vector<std::string>{"a", "b"});
  CHECK(f == comm({"a", "b"}, 12, {{{2, 1}, Rational(1)}, {{0, 4}, Rational(-1, 4)}}));
  CHECK(to_string(f).find("a^2 b") != std::string::npos);

  auto at1 = abelianize(w.rep(), *w.quiver().find_node("1"));
  CHECK(at1.variables().empty());
  CHECK(at1.is_zero());
}

TEST_CASE("abelianization kills idempotents and commutators") {
  auto q = laufer_quiver();
  CHECK(abelianize(el(q, 6, "1 e_1"), *q->find_node("2")).is_zero());
  CHECK(abelianize(el(q, 6, "1 e_2"), *q->find_node("2")) == comm({"a", "b"}, 6, {{{0, 0}, Rational(1)}}));
  CHECK(abelianize(el(q, 6, "1 a b; -1 b a"), *q->find_node("2")).is_zero());
}

TEST_CASE("partial derivatives") {
  auto f = comm({"a", "b"}, 8, {{{2, 1}, Rational(1)}, {{0, 4}, Rational(-1, 4)}});
  CHECK(partial(f, "a") == comm({"a", "b"}, 8, {{{1, 1}, Rational(2)}}));
  CHECK(partial(f, "b") == comm({"a", "b"}, 8, {{{2, 0}, Rational(1)}, {{0, 3}, Rational(-1)}}));
  CHECK(partial(comm({"a", "b"}, 8, {{{0, 4}, Rational(1)}}), "a").is_zero());
  CHECK_THROWS_AS((void)partial(f, "z"), DomainError);
}

TEST_CASE("commutative Jacobi dimensions") {
  auto f = comm({"a", "b"}, 10, {{{2, 1}, Rational(1)}, {{0, 4}, Rational(-1, 4)}});
  auto dim = comm_jacobi_dimension(f);
  REQUIRE(dim.dimension);
  // k[[a,b]]/(ab, a^2 - b^3) has basis 1, a, b, a^2, b^2.
  CHECK(*dim.dimension == 5);

  auto x2 = comm_jacobi_dimension(comm({"x"}, 6, {{{2}, Rational(1)}}));
  REQUIRE(x2.dimension);
  CHECK(*x2.dimension == 1);
  auto x3 = comm_jacobi_dimension(comm({"x"}, 6, {{{3}, Rational(1)}}));
  REQUIRE(x3.dimension);
  CHECK(*x3.dimension == 2);

  CHECK_FALSE(comm_jacobi_dimension(CommJet({"x"}, 6)).dimension);
}

TEST_CASE("Brown-Wemyss abelianizes to a quasi-homogeneous series") {
  const auto bw = corpus_potential("brown-wemyss");
  auto f = abelianize(bw.rep(), 0);
  CHECK(comm_is_quasi_homogeneous(f));
  auto dim = comm_jacobi_dimension(f);
  REQUIRE(dim.dimension);
  CHECK(*dim.dimension == 5);
  CHECK_FALSE(is_quasi_homogeneous(bw));
}

TEST_CASE("CommJet arithmetic") {
  auto x = comm({"x", "y"}, 3, {{{1, 0}, Rational(1)}});
  auto y = comm({"x", "y"}, 3, {{{0, 1}, Rational(1)}});
  CHECK(x * y == y * x);
  CHECK((x * x * y * y).is_zero());
  CHECK((x + y - x) == y);
  CHECK((Rational(3) * x).coeff({1, 0}) == Rational(3));
  CHECK(x.variable_index("y") == 1);
  CHECK_THROWS((void)(x + CommJet({"x"}, 3)));
}
