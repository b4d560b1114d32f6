#include "qpcalc/ginzburg.hpp"

#include <algorithm>

#include "qpcalc/errors.hpp"
#include "qpcalc/morphism.hpp"

namespace qpcalc {

namespace {

std::string fresh_name(const Quiver& base, std::vector<std::string>& taken, std::string name) {
  auto clash = [&](const std::string& n) {
    return base.find_arrow(n).has_value() || std::find(taken.begin(), taken.end(), n) != taken.end();
  };
  while (clash(name)) name += "'";
  taken.push_back(name);
  return name;
}

JetElem to_graded(const GradedQuiver& gq, const JetElem& f, int n) {
  JetElem out(gq.graded, n);
  for (const auto& [p, c] : f.terms()) out.add_term(p, c);
  return out;
}

// Σ_terms c · H(v) · x · H(u) over the terms u ⊗ v of a tensor.
JetElem sandwich(const GradedQuiver& gq, const TensorJet& t, const Endo& h, ArrowId x, int n) {
  JetElem out(gq.graded, n);
  const JetElem mid = JetElem::arrow(gq.graded, n, x);
  for (const auto& [uv, c] : t.terms()) {
    const JetElem left = to_graded(gq, apply(h, JetElem::path(h.quiver_ptr(), n, uv.second)), n);
    const JetElem right = to_graded(gq, apply(h, JetElem::path(h.quiver_ptr(), n, uv.first)), n);
    out += c * (left * mid * right);
  }
  return out;
}

Endo gamma_map(const GradedQuiver& gq, const Endo& h, const Endo& h_inv) {
  const Quiver& q = *gq.base;
  const int n = h.truncation();
  std::vector<JetElem> images;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) images.push_back(to_graded(gq, h.image(static_cast<ArrowId>(a)), n));
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    JetElem img(gq.graded, n);
    for (std::size_t b = 0; b < q.arrow_count(); ++b) {
      const TensorJet dd = double_derive(h_inv.image(static_cast<ArrowId>(b)), static_cast<ArrowId>(a));
      img += sandwich(gq, dd, h, gq.theta(static_cast<ArrowId>(b)), n);
    }
    images.push_back(std::move(img));
  }
  for (std::size_t i = 0; i < q.node_count(); ++i) images.push_back(JetElem::arrow(gq.graded, n, gq.loop(static_cast<NodeId>(i))));
  return Endo(gq.graded, n, std::move(images));
}

}  // namespace

int GradedQuiver::degree_of(const Path& p) const {
  int s = 0;
  for (ArrowId a : p.arrows) s += degree[a];
  return s;
}

bool GradedQuiver::is_degree_zero(const Path& p) const {
  return std::all_of(p.arrows.begin(), p.arrows.end(), [&](ArrowId a) { return degree[a] == 0; });
}

GradedQuiver make_graded_quiver(const QuiverPtr& base) {
  const Quiver& q = *base;
  std::vector<Quiver::ArrowSpec> specs;
  std::vector<std::string> taken;
  for (const auto& a : q.arrows()) specs.push_back({a.name, q.node_name(a.source), q.node_name(a.target)});
  for (const auto& a : q.arrows()) {
    specs.push_back({fresh_name(q, taken, "theta_" + a.name), q.node_name(a.target), q.node_name(a.source)});
  }
  for (std::size_t i = 0; i < q.node_count(); ++i) {
    const auto& node = q.node_name(static_cast<NodeId>(i));
    specs.push_back({fresh_name(q, taken, "t_" + node), node, node});
  }
  GradedQuiver gq;
  gq.base = base;
  gq.graded = make_quiver(q.nodes(), specs);
  gq.degree.assign(q.arrow_count(), 0);
  gq.degree.insert(gq.degree.end(), q.arrow_count(), -1);
  gq.degree.insert(gq.degree.end(), q.node_count(), -2);
  return gq;
}

GradedJetElem degree_component(const GradedQuiver& gq, const GradedJetElem& f, int degree) {
  JetElem out(f.quiver_ptr(), f.truncation());
  for (const auto& [p, c] : f.terms()) {
    if (gq.degree_of(p) == degree) out.add_term(p, c);
  }
  return out;
}

GradedJetElem lift(const GradedQuiver& gq, const JetElem& f) {
  if (!same_quiver(f.quiver_ptr(), gq.base)) throw ContextError("element is not over the base quiver");
  return to_graded(gq, f, f.truncation());
}

JetElem project(const GradedQuiver& gq, const GradedJetElem& f) {
  JetElem out(gq.base, f.truncation());
  for (const auto& [p, c] : f.terms()) {
    if (!gq.is_degree_zero(p)) throw DomainError("element involves arrows of nonzero degree");
    out.add_term(p, c);
  }
  return out;
}

GinzburgJet build_ginzburg(const Potential& phi) {
  if (phi.order() < 2) throw DomainError("Ginzburg algebra needs a potential of order >= 2");
  GradedQuiver gq = make_graded_quiver(phi.quiver_ptr());
  const Quiver& q = phi.quiver();
  const int n = phi.truncation();
  std::vector<GradedJetElem> table(gq.graded->arrow_count(), JetElem(gq.graded, n));
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto arrow = static_cast<ArrowId>(a);
    table[gq.theta(arrow)] = to_graded(gq, cyclic_derive(phi, arrow), n);
    const JetElem x = JetElem::arrow(gq.graded, n, arrow);
    const JetElem th = JetElem::arrow(gq.graded, n, gq.theta(arrow));
    table[gq.loop(q.source(arrow))] += x * th;
    table[gq.loop(q.target(arrow))] -= th * x;
  }
  return {std::move(gq), phi, std::move(table)};
}

GradedJetElem differential(const GinzburgJet& g, const GradedJetElem& f) {
  const GradedQuiver& gq = g.quiver;
  const Quiver& q = *gq.graded;
  if (!same_quiver(f.quiver_ptr(), gq.graded)) throw ContextError("element is not over the graded quiver");
  const int n = f.truncation();
  JetElem out(gq.graded, n);
  for (const auto& [p, c] : f.terms()) {
    int parity = 0;
    for (std::size_t i = 0; i < p.length(); ++i) {
      const ArrowId x = p.arrows[i];
      const JetElem& dx = g.table[x];
      if (!dx.is_zero()) {
        const Rational sign = parity % 2 == 0 ? c : -c;
        const Path left = subpath(q, p, 0, i);
        const Path right = subpath(q, p, i + 1, p.length() - i - 1);
        for (const auto& [t, e] : dx.terms()) {
          if (static_cast<int>(left.length() + t.length() + right.length()) > n) break;
          auto lt = concat(q, left, t);
          if (!lt) continue;
          auto full = concat(q, *lt, right);
          if (full) out.add_term(*full, sign * e);
        }
      }
      parity += gq.degree[x];
    }
  }
  return out;
}

bool check_d_squared(const GinzburgJet& g) {
  return std::all_of(g.table.begin(), g.table.end(), [&](const GradedJetElem& dx) { return differential(g, dx).is_zero(); });
}

RewriteSystem h0(const GinzburgJet& g) {
  const Quiver& q = *g.quiver.base;
  std::vector<JetElem> gens;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    // d(u·theta_a·v) = u·d(theta_a)·v for degree-0 u, so the image of degree -1
    // is the ideal generated by the d(theta_a).
    gens.push_back(project(g.quiver, g.table[g.quiver.theta(static_cast<ArrowId>(a))]));
  }
  RewriteSystem rs = complete(g.quiver.base, g.potential.truncation(), gens);
  const RewriteSystem jac = jacobi_system(g.potential);
  for (const auto& f : jac.generators()) {
    if (!ideal_membership(f, rs)) throw Error("H0 ideal differs from the Jacobi ideal");
  }
  for (const auto& f : gens) {
    if (!ideal_membership(f, jac)) throw Error("H0 ideal differs from the Jacobi ideal");
  }
  return rs;
}

bool gamma_commutes(const Endo& gamma, const GinzburgJet& source, const GinzburgJet& target) {
  const int n = gamma.truncation();
  const int level = n - 1;
  const Quiver& q = *source.quiver.graded;
  for (std::size_t x = 0; x < q.arrow_count(); ++x) {
    const JetElem lhs = apply(gamma, source.table[x]);
    const JetElem rhs = differential(target, gamma.image(static_cast<ArrowId>(x)));
    if (!(lhs.truncated(level) == rhs.truncated(level))) return false;
  }
  return true;
}

bool gamma_inverse_pair(const Endo& gamma, const Endo& gamma_inverse) {
  const Endo id = Endo::identity(gamma.quiver_ptr(), gamma.truncation());
  return compose(gamma, gamma_inverse) == id && compose(gamma_inverse, gamma) == id;
}

GammaTransfer transfer_gamma(const Endo& h, const Potential& phi) {
  if (!same_quiver(h.quiver_ptr(), phi.quiver_ptr()) || h.truncation() != phi.truncation()) {
    throw ContextError("endomorphism and potential have different contexts");
  }
  if (!is_automorphism(h)) throw DomainError("transfer needs an automorphism");
  const Endo h_inv = invert(h);
  const Potential psi = apply_potential(h, phi);
  GinzburgJet source = build_ginzburg(phi);
  GinzburgJet target = build_ginzburg(psi);
  Endo gamma = gamma_map(source.quiver, h, h_inv);
  Endo gamma_inv = gamma_map(target.quiver, h_inv, h);
  if (!gamma_commutes(gamma, source, target) || !gamma_commutes(gamma_inv, target, source)) {
    throw Error("internal error: transferred map does not commute with the differentials");
  }
  if (!gamma_inverse_pair(gamma, gamma_inv)) throw Error("internal error: transferred maps are not mutually inverse");
  return {std::move(source), std::move(target), std::move(gamma), std::move(gamma_inv)};
}

}  // namespace qpcalc
