#pragma once

#include <vector>

#include "qpcalc/jet.hpp"

namespace qpcalc {

class Potential;

// Node-fixing algebra endomorphism of the truncated complete path algebra,
// determined by the images h_a of the arrows. Each h_a lies in
// e_{s(a)}·m·e_{t(a)}.
class Endo {
 public:
  // Throws DomainError if an image has a constant term or the wrong corner.
  Endo(QuiverPtr quiver, int truncation, std::vector<JetElem> images);

  static Endo identity(const QuiverPtr& q, int n);

  [[nodiscard]] const Quiver& quiver() const { return *quiver_; }
  [[nodiscard]] const QuiverPtr& quiver_ptr() const { return quiver_; }
  [[nodiscard]] int truncation() const { return truncation_; }
  [[nodiscard]] const JetElem& image(ArrowId a) const { return images_.at(a); }
  [[nodiscard]] const std::vector<JetElem>& images() const { return images_; }

  friend bool operator==(const Endo& a, const Endo& b) {
    return same_quiver(a.quiver_, b.quiver_) && a.truncation_ == b.truncation_ && a.images_ == b.images_;
  }

 private:
  QuiverPtr quiver_;
  int truncation_;
  std::vector<JetElem> images_;
};

// Multiplicative substitution a -> h_a, truncated at N.
JetElem apply(const Endo& h, const JetElem& f);
Potential apply_potential(const Endo& h, const Potential& phi);

}  // namespace qpcalc
