#include "qpcalc/endo.hpp"

#include <functional>
#include <map>

#include "qpcalc/calculus.hpp"
#include "qpcalc/errors.hpp"

namespace qpcalc {

Endo::Endo(QuiverPtr quiver, int truncation, std::vector<JetElem> images)
    : quiver_(std::move(quiver)), truncation_(truncation), images_(std::move(images)) {
  const Quiver& q = *quiver_;
  if (images_.size() != q.arrow_count()) throw DomainError("endomorphism needs one image per arrow");
  for (std::size_t a = 0; a < images_.size(); ++a) {
    const JetElem& h = images_[a];
    if (!same_quiver(h.quiver_ptr(), quiver_) || h.truncation() != truncation_) {
      throw ContextError("image of '" + q.arrow(static_cast<ArrowId>(a)).name + "' has a different context");
    }
    const auto& arrow = q.arrow(static_cast<ArrowId>(a));
    if (!(h.corner(arrow.source, arrow.target) == h)) {
      throw DomainError("image of '" + arrow.name + "' does not lie in e_s(a)·kQ·e_t(a)");
    }
    if (!h.is_zero() && *h.order() < 1) {
      throw DomainError("image of '" + arrow.name + "' has a constant term");
    }
  }
}

Endo Endo::identity(const QuiverPtr& q, int n) {
  std::vector<JetElem> images;
  for (std::size_t a = 0; a < q->arrow_count(); ++a) images.push_back(JetElem::arrow(q, n, static_cast<ArrowId>(a)));
  return Endo(q, n, std::move(images));
}

JetElem apply(const Endo& h, const JetElem& f) {
  if (!same_quiver(h.quiver_ptr(), f.quiver_ptr()) || h.truncation() != f.truncation()) {
    throw ContextError("endomorphism and jet have different contexts");
  }
  const QuiverPtr& qp = f.quiver_ptr();
  const int n = f.truncation();
  // Images of prefixes, shared between the terms of f.
  std::map<Path, JetElem> cache;
  std::function<const JetElem&(const Path&)> image_of = [&](const Path& p) -> const JetElem& {
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    JetElem value(qp, n);
    if (p.empty()) {
      value = JetElem::idempotent(qp, n, p.base);
    } else if (p.length() == 1) {
      value = h.image(p.arrows.front());
    } else {
      Path prefix = p;
      prefix.arrows.pop_back();
      value = image_of(prefix) * h.image(p.arrows.back());
    }
    return cache.emplace(p, std::move(value)).first->second;
  };
  JetElem out(qp, n);
  for (const auto& [p, c] : f.terms()) out += c * image_of(p);
  return out;
}

Potential apply_potential(const Endo& h, const Potential& phi) { return necklace_canonicalize(apply(h, phi.rep())); }

}  // namespace qpcalc
