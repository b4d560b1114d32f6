#include "qpcalc/morphism.hpp"

#include <algorithm>

#include "internal.hpp"
#include "qpcalc/errors.hpp"
#include "qpcalc/invariants.hpp"

namespace qpcalc {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

std::optional<Matrix> inverse(Matrix m) {
  const std::size_t n = m.size();
  Matrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Rational(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const Rational s = Rational(1) / m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const Rational f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

void require_same(const Endo& a, const Endo& b) {
  if (!same_quiver(a.quiver_ptr(), b.quiver_ptr()) || a.truncation() != b.truncation()) {
    throw ContextError("endomorphisms have different contexts");
  }
}

bool members_below(const std::vector<JetElem>& elems, const RewriteSystem& rs) {
  return std::all_of(elems.begin(), elems.end(),
                     [&](const JetElem& f) { return ideal_membership(f.truncated(rs.truncation()), rs); });
}

std::vector<JetElem> mapped_derivatives(const JetMap& map, const Potential& phi) {
  std::vector<JetElem> out;
  for (const auto& d : cyclic_derivatives(phi)) out.push_back(map(d));
  return out;
}

Endo shift(const QuiverPtr& q, int n, const std::vector<JetElem>& xi) {
  std::vector<JetElem> images;
  for (std::size_t a = 0; a < q->arrow_count(); ++a) images.push_back(JetElem::arrow(q, n, static_cast<ArrowId>(a)) + xi[a]);
  return Endo(q, n, std::move(images));
}

// Positive integer weight per arrow; the standard grading is all ones.
using Grading = std::vector<int>;

int weight_of(const Grading& w, const Path& p) {
  int s = 0;
  for (ArrowId a : p.arrows) s += w[a];
  return s;
}

// Least weight of a nonzero potential.
int weighted_order(const Grading& w, const Potential& p) {
  int best = -1;
  for (const auto& [path, c] : p.rep().terms()) {
    const int x = weight_of(w, path);
    if (best < 0 || x < best) best = x;
  }
  return best;
}

detail::PathVec weighted_part(const Grading& w, const Potential& p, int weight) {
  detail::PathVec out;
  for (const auto& [path, c] : p.rep().terms()) {
    if (weight_of(w, path) == weight) out.emplace(path, c);
  }
  return out;
}

// Linear system for substitutions a -> a + xi(a) matching a discrepancy of a
// given weight: π(Σ xi(a)·D_a(cur)) must vanish below `weight` and equal the
// target in it. Weights above the target are left for later steps.
class SliceSolver {
 public:
  SliceSolver(const Potential& cur, const Grading& grading, int weight)
      : cur_(cur), grading_(grading), weight_(weight) {
    for (std::size_t a = 0; a < cur.quiver().arrow_count(); ++a) derivs_.push_back(cyclic_derive(cur, static_cast<ArrowId>(a)));
  }

  // Adds the unknowns xi(a) supported on paths p with wt(p) - wt(a) = shift.
  void add_shift(int shift, const std::vector<Path>& paths) {
    const Quiver& q = cur_.quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto arrow = static_cast<ArrowId>(a);
      if (derivs_[a].is_zero()) continue;
      for (const auto& p : paths) {
        if (p.empty() || weight_of(grading_, p) - grading_[a] != shift) continue;
        if (path_source(q, p) != q.source(arrow) || path_target(q, p) != q.target(arrow)) continue;
        Echelon<Path>::Vec v;
        for (const auto& [t, c] : derivs_[a].terms()) {
          if (weight_of(grading_, t) + weight_of(grading_, p) > weight_) continue;
          auto prod = concat(q, p, t);
          if (!prod || static_cast<int>(prod->length()) > cur_.truncation()) continue;
          Echelon<Path>::axpy(v, c, Echelon<Path>::Vec{{max_rotation(q, *prod), Rational(1)}});
        }
        if (v.empty()) continue;
        columns_.push_back({arrow, p});
        span_.insert(std::move(v), columns_.size() - 1);
      }
    }
  }

  [[nodiscard]] std::optional<std::vector<JetElem>> solve(const detail::PathVec& target) const {
    Echelon<Path>::Combination used;
    auto residual = span_.reduce(Echelon<Path>::Vec(target.begin(), target.end()), &used);
    if (!residual.empty()) return std::nullopt;
    const auto& qp = cur_.quiver_ptr();
    std::vector<JetElem> xi(cur_.quiver().arrow_count(), JetElem(qp, cur_.truncation()));
    for (const auto& [tag, c] : used) xi[columns_[tag].arrow].add_term(columns_[tag].path, c);
    return xi;
  }

 private:
  struct Column {
    ArrowId arrow;
    Path path;
  };

  const Potential& cur_;
  const Grading& grading_;
  int weight_;
  std::vector<JetElem> derivs_;
  std::vector<Column> columns_;
  Echelon<Path> span_;
};

struct SearchOutcome {
  std::optional<Endo> map;
  int weight = 0;
  std::optional<Potential> residual;
};

// Weight-by-weight correction. A shift-s substitution changes π(...) at
// weight e first linearly, at e + s, and quadratically from e + 2s on, so
// shifts above half the gap are exact at the target weight.
SearchOutcome search(const Potential& phi, const Potential& psi, const Grading& grading) {
  const QuiverPtr& qp = phi.quiver_ptr();
  const int n = phi.truncation();
  const auto paths = all_paths(*qp, n);
  Endo h = Endo::identity(qp, n);
  bool aligned_lowest = false;
  for (;;) {
    const Potential cur = apply_potential(h, phi);
    const Potential delta = psi - cur;
    if (delta.is_zero()) return {std::move(h), 0, std::nullopt};
    const int base = weighted_order(grading, cur);
    const int e = weighted_order(grading, delta);
    const int gap = e - base;
    const detail::PathVec target = weighted_part(grading, delta, e);
    std::optional<std::vector<JetElem>> xi;
    SliceSolver solver(cur, grading, e);
    if (gap <= 0) {
      // Lowest parts differ: one weight-preserving change, verified below.
      if (gap == 0 && !aligned_lowest) {
        solver.add_shift(0, paths);
        xi = solver.solve(target);
      }
      aligned_lowest = true;
    } else {
      for (int s = gap; 2 * s > gap && !xi; --s) {
        solver.add_shift(s, paths);
        xi = solver.solve(target);
      }
    }
    if (xi) {
      const Endo step = shift(qp, n, *xi);
      if (is_automorphism(step)) {
        Endo next = compose(step, h);
        const Potential after = psi - apply_potential(next, phi);
        if (after.is_zero() || weighted_order(grading, after) > e) {
          h = std::move(next);
          continue;
        }
      }
    }
    return {std::nullopt, e, delta};
  }
}

std::vector<Grading> candidate_gradings(const Potential& phi) {
  const std::size_t arrows = phi.quiver().arrow_count();
  std::vector<Grading> out{Grading(arrows, 1)};
  for (int r = phi.order(); r <= phi.truncation(); ++r) {
    const Potential j = jet(phi, r);
    if (j.is_zero()) continue;
    auto w = find_weights(j);
    if (!w) continue;
    Grading g;
    for (const auto& x : w->weight) g.push_back(static_cast<int>(x.numerator().get_si()));
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

Endo compose(const Endo& h1, const Endo& h2) {
  require_same(h1, h2);
  std::vector<JetElem> images;
  for (const auto& img : h2.images()) images.push_back(apply(h1, img));
  return Endo(h1.quiver_ptr(), h1.truncation(), std::move(images));
}

std::vector<std::vector<Rational>> linear_part(const Endo& h) {
  const Quiver& q = h.quiver();
  const std::size_t n = q.arrow_count();
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) m[a][b] = h.image(static_cast<ArrowId>(a)).coeff(Path::single(q, static_cast<ArrowId>(b)));
  }
  return m;
}

bool is_automorphism(const Endo& h) { return inverse(linear_part(h)).has_value(); }

Endo invert(const Endo& h) {
  auto minv = inverse(linear_part(h));
  if (!minv) throw DomainError("endomorphism is not invertible: singular linear part");
  const QuiverPtr& qp = h.quiver_ptr();
  const Quiver& q = *qp;
  const int n = h.truncation();
  const std::size_t arrows = q.arrow_count();
  std::vector<JetElem> t_images;
  for (std::size_t a = 0; a < arrows; ++a) {
    JetElem img(qp, n);
    for (std::size_t b = 0; b < arrows; ++b) img.add_term(Path::single(q, static_cast<ArrowId>(b)), (*minv)[a][b]);
    t_images.push_back(std::move(img));
  }
  const Endo t(qp, n, std::move(t_images));
  // g has identity linear part; g_{a,r} = -g(g_{a,1} + ... + g_{a,r-1})[r].
  const Endo g = compose(h, t);
  std::vector<JetElem> ginv;
  for (std::size_t a = 0; a < arrows; ++a) {
    JetElem acc = JetElem::arrow(qp, n, static_cast<ArrowId>(a));
    for (int r = 2; r <= n; ++r) acc -= apply(g, acc).homogeneous(r);
    ginv.push_back(std::move(acc));
  }
  return compose(t, Endo(qp, n, std::move(ginv)));
}

RewriteSystem jacobi_system_below(const Potential& phi) {
  const int m = phi.truncation() - 1;
  if (m < 1) throw DomainError("truncation too small to compare Jacobi ideals");
  std::vector<JetElem> gens;
  for (const auto& d : cyclic_derivatives(phi)) gens.push_back(d.truncated(m));
  return complete(phi.quiver_ptr(), m, gens);
}

bool transform_ideal_check(const JetMap& forward, const JetMap& backward, const Potential& phi) {
  const Potential image = necklace_canonicalize(forward(phi.rep()));
  const RewriteSystem j_phi = jacobi_system_below(phi);
  const RewriteSystem j_image = jacobi_system_below(image);
  return members_below(mapped_derivatives(forward, phi), j_image) &&
         members_below(mapped_derivatives(backward, image), j_phi);
}

bool transform_ideal_check(const Endo& h, const Potential& phi) {
  if (!same_quiver(h.quiver_ptr(), phi.quiver_ptr()) || h.truncation() != phi.truncation()) {
    throw ContextError("endomorphism and potential have different contexts");
  }
  const Endo inv = invert(h);
  return transform_ideal_check([&](const JetElem& f) { return apply(h, f); },
                               [&](const JetElem& f) { return apply(inv, f); }, phi);
}

Endo lift_iso(const std::vector<JetElem>& images, const Potential& phi, const Potential& psi) {
  if (!same_quiver(phi.quiver_ptr(), psi.quiver_ptr()) || phi.truncation() != psi.truncation()) {
    throw ContextError("potentials have different contexts");
  }
  if (phi.order() < 3 || psi.order() < 3) throw DomainError("lift_iso needs potentials of order >= 3");
  Endo h(phi.quiver_ptr(), phi.truncation(), images);
  if (!is_automorphism(h)) throw DomainError("images do not induce an isomorphism m/m^2");
  const RewriteSystem j_psi = jacobi_system_below(psi);
  const Quiver& q = phi.quiver();
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const JetElem image = apply(h, cyclic_derive(phi, static_cast<ArrowId>(a)));
    if (!ideal_membership(image.truncated(j_psi.truncation()), j_psi)) {
      throw DomainError("lift is not well defined: image of D_" + q.arrow(static_cast<ArrowId>(a)).name +
                        " is not in the target Jacobi ideal");
    }
  }
  return h;
}

std::string to_string(EquivalenceResult::Status s) {
  switch (s) {
    case EquivalenceResult::Status::Success:
      return "SUCCESS";
    case EquivalenceResult::Status::CertifiedDifferent:
      return "CERTIFIED-DIFFERENT";
    case EquivalenceResult::Status::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

EquivalenceResult construct_equivalence(const Potential& phi, const Potential& psi) {
  using Status = EquivalenceResult::Status;
  if (!same_quiver(phi.quiver_ptr(), psi.quiver_ptr()) || phi.truncation() != psi.truncation()) {
    throw ContextError("potentials have different contexts");
  }
  EquivalenceResult out;
  if (phi.order() != psi.order()) {
    out.status = Status::CertifiedDifferent;
    out.reason = "order " + std::to_string(phi.order()) + " != " + std::to_string(psi.order());
    return out;
  }
  if (phi.order() < 3) throw DomainError("construct_equivalence needs potentials of order >= 3");

  // Automorphisms preserve m^s ⊆ J, which is visible at jet level when s < N.
  const RewriteSystem rs_phi = jacobi_system(phi);
  const RewriteSystem rs_psi = jacobi_system(psi);
  const auto dim_phi = lambda_dimension(rs_phi);
  const auto dim_psi = lambda_dimension(rs_psi);
  if (!dim_phi.dimension && !dim_psi.dimension) {
    throw CertificateError("no Jacobi dimension is certified at this truncation; increase truncation");
  }
  if (!dim_phi.dimension || !dim_psi.dimension) {
    const int s = dim_phi.dimension ? *dim_phi.certified_power : *dim_psi.certified_power;
    out.status = Status::CertifiedDifferent;
    out.reason = "m^" + std::to_string(s) + " lies in the Jacobi ideal of the " +
                 (dim_phi.dimension ? "first" : "second") + " potential only";
    return out;
  }
  if (*dim_psi.dimension != *dim_phi.dimension) {
    out.status = Status::CertifiedDifferent;
    out.reason = "Jacobi dimension " + std::to_string(*dim_phi.dimension) + " != " + std::to_string(*dim_psi.dimension);
    return out;
  }
  const bool z_phi = hh0_class(phi, rs_phi).zero;
  const bool z_psi = hh0_class(psi, rs_psi).zero;
  if (z_phi != z_psi) {
    out.status = Status::CertifiedDifferent;
    out.reason = std::string("HH0 class vanishes for the ") + (z_phi ? "first" : "second") + " potential only";
    return out;
  }

  std::optional<SearchOutcome> first_failure;
  for (const auto& grading : candidate_gradings(phi)) {
    SearchOutcome attempt = search(phi, psi, grading);
    if (attempt.map) {
      if (!is_automorphism(*attempt.map) || !(apply_potential(*attempt.map, phi) == psi)) {
        throw Error("internal error: equivalence search produced an invalid map");
      }
      out.status = Status::Success;
      out.map = std::move(attempt.map);
      out.reason = "explicit automorphism";
      return out;
    }
    if (!first_failure) first_failure = std::move(attempt);
  }
  out.status = Status::Inconclusive;
  out.degree = first_failure->weight;
  out.residual = first_failure->residual;
  out.reason = "no correction found for the discrepancy of degree " + std::to_string(out.degree);
  return out;
}

}  // namespace qpcalc
