#include "qpcalc/calculus.hpp"

#include "qpcalc/endo.hpp"

namespace qpcalc {

Potential operator+(const Potential& a, const Potential& b) { return Potential(a.rep_ + b.rep_); }
Potential operator-(const Potential& a, const Potential& b) { return Potential(a.rep_ - b.rep_); }
Potential operator*(const Rational& c, const Potential& a) { return Potential(c * a.rep_); }

Path max_rotation(const Quiver& q, const Path& cycle) {
  const std::size_t k = cycle.length();
  if (k <= 1) return cycle;
  std::size_t best = 0;
  for (std::size_t s = 1; s < k; ++s) {
    for (std::size_t i = 0; i < k; ++i) {
      ArrowId x = cycle.arrows[(s + i) % k];
      ArrowId y = cycle.arrows[(best + i) % k];
      if (x != y) {
        if (x > y) best = s;
        break;
      }
    }
  }
  Path out;
  out.arrows.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.arrows.push_back(cycle.arrows[(best + i) % k]);
  out.base = q.source(out.arrows.front());
  return out;
}

Potential necklace_canonicalize(const JetElem& f) {
  const Quiver& q = f.quiver();
  JetElem rep(f.quiver_ptr(), f.truncation());
  for (const auto& [p, c] : f.terms()) {
    if (!is_cycle(q, p)) continue;
    rep.add_term(max_rotation(q, p), c);
  }
  return Potential(std::move(rep));
}

JetElem cyclic_derive(const JetElem& f, ArrowId a) {
  const Quiver& q = f.quiver();
  if (a >= q.arrow_count()) throw DomainError("unknown arrow id " + std::to_string(a));
  JetElem out(f.quiver_ptr(), f.truncation());
  for (const auto& [p, c] : f.terms()) {
    if (p.empty() || !is_cycle(q, p)) continue;
    const std::size_t k = p.length();
    for (std::size_t j = 0; j < k; ++j) {
      if (p.arrows[j] != a) continue;
      Path vu;
      if (k == 1) {
        vu = Path::idempotent(q.target(a));
      } else {
        vu.arrows.reserve(k - 1);
        for (std::size_t i = j + 1; i < k; ++i) vu.arrows.push_back(p.arrows[i]);
        for (std::size_t i = 0; i < j; ++i) vu.arrows.push_back(p.arrows[i]);
        vu.base = q.source(vu.arrows.front());
      }
      out.add_term(vu, c);
    }
  }
  return out;
}

JetElem cyclic_derive(const Potential& phi, ArrowId a) { return cyclic_derive(phi.rep(), a); }

std::vector<JetElem> cyclic_derivatives(const Potential& phi) {
  std::vector<JetElem> out;
  for (std::size_t a = 0; a < phi.quiver().arrow_count(); ++a) out.push_back(cyclic_derive(phi, static_cast<ArrowId>(a)));
  return out;
}

TensorJet double_derive(const JetElem& f, ArrowId a) {
  const Quiver& q = f.quiver();
  if (a >= q.arrow_count()) throw DomainError("unknown arrow id " + std::to_string(a));
  TensorJet out(f.quiver_ptr(), f.truncation());
  for (const auto& [p, c] : f.terms()) {
    const std::size_t k = p.length();
    for (std::size_t j = 0; j < k; ++j) {
      if (p.arrows[j] != a) continue;
      out.add_term(subpath(q, p, 0, j), subpath(q, p, j + 1, k - j - 1), c);
    }
  }
  return out;
}

JetElem chain_rule_rhs(const Endo& h, const JetElem& phi, ArrowId beta) {
  if (!same_quiver(h.quiver_ptr(), phi.quiver_ptr()) || h.truncation() != phi.truncation()) {
    throw ContextError("endomorphism and jet have different contexts");
  }
  const Quiver& q = phi.quiver();
  const QuiverPtr& qp = phi.quiver_ptr();
  const int n = phi.truncation();
  JetElem out(qp, n);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    TensorJet dh = double_derive(h.image(static_cast<ArrowId>(a)), beta);
    if (dh.is_zero()) continue;
    JetElem mid = apply(h, cyclic_derive(phi, static_cast<ArrowId>(a)));
    if (mid.is_zero()) continue;
    for (const auto& [key, c] : dh.terms()) {
      out += c * (JetElem::path(qp, n, key.second) * mid * JetElem::path(qp, n, key.first));
    }
  }
  return out;
}

JetElem divergence(const std::vector<JetElem>& family) {
  if (family.empty()) throw DomainError("empty family");
  const QuiverPtr& qp = family.front().quiver_ptr();
  if (family.size() != qp->arrow_count()) throw DomainError("family must have one entry per arrow");
  JetElem out(qp, family.front().truncation());
  for (std::size_t a = 0; a < family.size(); ++a) {
    out += commutator(JetElem::arrow(qp, out.truncation(), static_cast<ArrowId>(a)), family[a]);
  }
  return out;
}

JetElem antiderivative(const std::vector<JetElem>& family) {
  JetElem residual = divergence(family);
  if (!residual.is_zero()) throw DivergenceError(residual);
  const QuiverPtr& qp = family.front().quiver_ptr();
  const Quiver& q = *qp;
  const int n = family.front().truncation();
  JetElem phi(qp, n);
  for (std::size_t a = 0; a < family.size(); ++a) {
    const auto arrow = static_cast<ArrowId>(a);
    const JetElem& f = family[a];
    require_same_context(f, phi);
    if (!(f.corner(q.target(arrow), q.source(arrow)) == f)) {
      throw DomainError("f_" + q.arrow(arrow).name + " does not lie in e_t(a)·kQ·e_s(a)");
    }
    if (f.max_degree() >= n) {
      throw DomainError("f_" + q.arrow(arrow).name + " has terms of degree " + std::to_string(n) +
                        "; its antiderivative exceeds the truncation order");
    }
    JetElem af = JetElem::arrow(qp, n, arrow) * f;
    for (const auto& [p, c] : af.terms()) phi.add_term(p, c / Rational(static_cast<long>(p.length())));
  }
  return phi;
}

Potential jet(const Potential& phi, int r) {
  if (r < 0 || r > phi.truncation()) {
    throw DomainError("jet order " + std::to_string(r) + " outside [0, " + std::to_string(phi.truncation()) + "]");
  }
  return necklace_canonicalize(phi.rep().jet(r));
}

}  // namespace qpcalc
