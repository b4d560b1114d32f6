#include "doctest.h"
#include "support/fixtures.hpp"

using namespace qpcalc;
using namespace qpcalc::testing;

TEST_CASE("rationals stay canonical") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -3).str() == "-1/3");
  CHECK(Rational::parse("-6/8") == Rational(-3, 4));
  CHECK(Rational::parse("123456789012345678901234567890").is_integer());
  CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Rational::parse("x"), DomainError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}

TEST_CASE("parse_quiver keeps declaration order") {
  auto q = parse_quiver("nodes 1 2\narrow c 1 2\narrow d 2 1\n");
  REQUIRE(q->node_count() == 2);
  REQUIRE(q->arrow_count() == 2);
  CHECK(q->arrow(0).name == "c");
  CHECK(q->arrow(1).name == "d");
  CHECK(q->node_name(q->source(0)) == "1");
  CHECK(q->node_name(q->target(0)) == "2");

  auto lone = parse_quiver("nodes 1\n");
  CHECK(lone->node_count() == 1);
  CHECK(lone->arrow_count() == 0);
}

TEST_CASE("parse_quiver rejects bad input with a position") {
  try {
    (void)parse_quiver("nodes 1 2\narrow a 1 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS((void)parse_quiver("nodes 1\narrow a 1 1\narrow a 1 1\n"), ParseError);
  CHECK_THROWS_AS((void)parse_quiver("nodes 1 1\n"), ParseError);
  CHECK_THROWS_AS((void)parse_quiver("node 1\n"), ParseError);
}

TEST_CASE("multiply concatenates left to right") {
  auto q = laufer_quiver();
  const int n = 6;
  auto e2 = JetElem::idempotent(q, n, *q->find_node("2"));
  auto a = JetElem::arrow(q, n, q->arrow_id("a"));
  CHECK(e2 * a == a);
  CHECK(a * e2 == a);
  CHECK(JetElem::idempotent(q, n, *q->find_node("1")) * a == JetElem::zero(q, n));

  auto cd = JetElem::arrow(q, n, q->arrow_id("c")) * JetElem::arrow(q, n, q->arrow_id("d"));
  REQUIRE(cd.size() == 1);
  const Path& p = cd.terms().begin()->first;
  CHECK(path_to_string(*q, p) == "c d");
  CHECK(path_source(*q, p) == *q->find_node("1"));
  CHECK(path_target(*q, p) == *q->find_node("1"));
  CHECK((JetElem::arrow(q, n, q->arrow_id("d")) * JetElem::arrow(q, n, q->arrow_id("d"))).is_zero());
}

TEST_CASE("truncation kills long products") {
  auto q = one_loop("b");
  auto b2 = el(q, 3, "1 b b");
  CHECK((b2 * b2).is_zero());
  CHECK((b2 * el(q, 3, "1 b")) == el(q, 3, "1 b b b"));
  CHECK(el(q, 3, "1 b b b b").is_zero());
}

TEST_CASE("linear operations and commutators") {
  auto q = two_loops();
  const int n = 4;
  auto a = el(q, n, "1 a");
  auto b = el(q, n, "1 b");
  CHECK(commutator(a, a).is_zero());
  CHECK(commutator(a, b) == el(q, n, "1 a b; -1 b a"));
  auto half = scale(Rational(1, 2), el(q, n, "1 a a"));
  CHECK(add(half, half) == el(q, n, "1 a a"));
  CHECK((a - a).is_zero());
  CHECK(a.coeff(Path::single(*q, 0)) == Rational(1));
}

TEST_CASE("mixing contexts is an error") {
  auto q = two_loops();
  auto other = make_quiver({"1"}, {{"a", "1", "1"}, {"c", "1", "1"}});
  CHECK_THROWS_AS((void)(el(q, 4, "1 a") + el(q, 5, "1 a")), ContextError);
  CHECK_THROWS_AS((void)(el(q, 4, "1 a") * el(other, 4, "1 a")), ContextError);
  // Structurally equal quivers are one context.
  CHECK(el(q, 4, "1 a") + el(two_loops(), 4, "1 b") == el(q, 4, "1 a; 1 b"));
}

TEST_CASE("tensor actions") {
  auto q = two_loops();
  const int n = 5;
  const auto e = Path::idempotent(0);
  const auto pa = Path::single(*q, 0);
  const auto pb = Path::single(*q, 1);
  TensorJet ee(q, n);
  ee.add_term(e, e, Rational(1));
  auto one = JetElem::one(q, n);
  CHECK(inner_mul(one, ee, one) == ee);

  TensorJet ba(q, n);
  ba.add_term(pb, pa, Rational(1));
  CHECK(inner_mul(el(q, n, "1 a"), ee, el(q, n, "1 b")) == ba);

  TensorJet ab(q, n);
  ab.add_term(pa, pb, Rational(1));
  CHECK(outer_mul(el(q, n, "1 a"), ee, el(q, n, "1 b")) == ab);

  CHECK(mu_hat(ab) == el(q, n, "1 a b"));
  CHECK(tau_hat(tau_hat(ab)) == ab);
  CHECK(mu_hat(tau_hat(ab)) == el(q, n, "1 b a"));
}

TEST_CASE("qpot print and parse round trip") {
  for (const auto& name : corpus_names()) {
    auto doc = corpus_entry(name).document;
    auto again = parse_qpot(print_qpot(doc));
    CHECK(*again.quiver == *doc.quiver);
    CHECK(again.truncation == doc.truncation);
    CHECK(again.potential == doc.potential);
  }
}

TEST_CASE("qpot defaults and strictness") {
  auto doc = parse_qpot("nodes 1\narrow x 1 1\npotential\n  1/3 x x x\nend\n");
  CHECK(doc.truncation == kDefaultTruncation);
  CHECK(doc.potential.order() == 3);

  CHECK_THROWS_AS((void)parse_qpot("nodes 1\narrow x 1 1\npotential\n 1 x x\n"), ParseError);
  CHECK_THROWS_AS((void)parse_qpot("nodes 1 2\narrow c 1 2\npotential\n 1 c\nend\n"), ParseError);
  CHECK_THROWS_AS((void)parse_qpot("nodes 1\narrow x 1 1\ntruncation 2\npotential\n 1 x x x\nend\n"), ParseError);
  CHECK_THROWS_AS((void)parse_qpot("nodes 1\narrow x 1 1\npotential\n 1 y\nend\n"), ParseError);
  CHECK_THROWS_AS((void)parse_qpot("nodes 1\narrow x 1 1\ntruncation 0\n"), ParseError);
  // Comments and blank lines are ignored.
  auto c = parse_qpot("# header\n\nnodes 1 # one node\narrow x 1 1\npotential\n 1 x x # square\nend\n");
  CHECK(c.potential.order() == 2);
}

TEST_CASE("endo files round trip") {
  auto q = two_loops();
  auto h = parse_endo("map a: 1 a; 1 a b\nmap b: 1 b; -1 a a\n", q, 6);
  CHECK(parse_endo(print_endo(h), q, 6) == h);
  auto id = parse_endo("", q, 6);
  CHECK(id == Endo::identity(q, 6));
  CHECK_THROWS_AS((void)parse_endo("map a: 1 a\nmap a: 1 b\n", q, 6), ParseError);
  CHECK_THROWS_AS((void)parse_endo("map z: 1 a\n", q, 6), ParseError);
  auto lq = laufer_quiver();
  CHECK_THROWS_AS((void)parse_endo("map c: 1 d\n", lq, 6), ParseError);
}

TEST_CASE("missing files raise Error") {
  CHECK_THROWS_AS((void)read_text_file("/nonexistent/path.qpot"), Error);
}
