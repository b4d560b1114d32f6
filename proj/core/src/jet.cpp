#include "qpcalc/jet.hpp"

#include <algorithm>
#include <functional>

#include "qpcalc/errors.hpp"

namespace qpcalc {

namespace {

template <typename Map, typename Key>
void accumulate(Map& terms, Key&& key, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(std::forward<Key>(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

void check_context(const QuiverPtr& qa, int na, const QuiverPtr& qb, int nb) {
  if (!same_quiver(qa, qb)) throw ContextError("operands belong to different quivers");
  if (na != nb) {
    throw ContextError("operands have different truncation orders (" + std::to_string(na) + " vs " +
                       std::to_string(nb) + ")");
  }
}

}  // namespace

JetElem::JetElem(QuiverPtr quiver, int truncation) : quiver_(std::move(quiver)), truncation_(truncation) {
  if (!quiver_) throw ContextError("jet element without a quiver");
  if (truncation_ < 1) throw DomainError("truncation order must be positive");
}

JetElem JetElem::idempotent(const QuiverPtr& q, int n, NodeId node) {
  JetElem out(q, n);
  if (node >= q->node_count()) throw DomainError("node id out of range");
  out.add_term(Path::idempotent(node), Rational(1));
  return out;
}

JetElem JetElem::one(const QuiverPtr& q, int n) {
  JetElem out(q, n);
  for (std::size_t i = 0; i < q->node_count(); ++i) out.add_term(Path::idempotent(static_cast<NodeId>(i)), Rational(1));
  return out;
}

JetElem JetElem::arrow(const QuiverPtr& q, int n, ArrowId a) {
  JetElem out(q, n);
  out.add_term(Path::single(*q, a), Rational(1));
  return out;
}

JetElem JetElem::path(const QuiverPtr& q, int n, const Path& p, const Rational& c) {
  JetElem out(q, n);
  out.add_term(p, c);
  return out;
}

Rational JetElem::coeff(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

void JetElem::add_term(const Path& p, const Rational& c) {
  if (static_cast<int>(p.length()) > truncation_) return;
  accumulate(terms_, p, c);
}

std::optional<int> JetElem::order() const {
  if (terms_.empty()) return std::nullopt;
  return static_cast<int>(terms_.begin()->first.length());
}

int JetElem::max_degree() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.length());
}

JetElem JetElem::homogeneous(int degree) const {
  JetElem out(quiver_, truncation_);
  for (const auto& [p, c] : terms_) {
    if (static_cast<int>(p.length()) == degree) out.terms_.emplace_hint(out.terms_.end(), p, c);
  }
  return out;
}

JetElem JetElem::jet(int r) const {
  JetElem out(quiver_, truncation_);
  for (const auto& [p, c] : terms_) {
    if (static_cast<int>(p.length()) > r) break;
    out.terms_.emplace_hint(out.terms_.end(), p, c);
  }
  return out;
}

JetElem JetElem::truncated(int m) const {
  if (m > truncation_) throw DomainError("cannot refine truncation order " + std::to_string(truncation_) + " to " +
                                         std::to_string(m));
  return with_truncation(m);
}

JetElem JetElem::with_truncation(int m) const {
  JetElem out(quiver_, m);
  for (const auto& [p, c] : terms_) {
    if (static_cast<int>(p.length()) > m) break;
    out.terms_.emplace_hint(out.terms_.end(), p, c);
  }
  return out;
}

JetElem JetElem::corner(NodeId i, NodeId j) const {
  JetElem out(quiver_, truncation_);
  for (const auto& [p, c] : terms_) {
    if (path_source(*quiver_, p) == i && path_target(*quiver_, p) == j) out.terms_.emplace_hint(out.terms_.end(), p, c);
  }
  return out;
}

JetElem& JetElem::operator+=(const JetElem& o) {
  require_same_context(*this, o);
  for (const auto& [p, c] : o.terms_) accumulate(terms_, p, c);
  return *this;
}

JetElem& JetElem::operator-=(const JetElem& o) {
  require_same_context(*this, o);
  for (const auto& [p, c] : o.terms_) accumulate(terms_, p, -c);
  return *this;
}

JetElem& JetElem::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

JetElem operator*(const JetElem& a, const JetElem& b) {
  require_same_context(a, b);
  JetElem out(a.quiver_, a.truncation_);
  const Quiver& q = *a.quiver_;
  const int n = a.truncation_;
  for (const auto& [p, c] : a.terms_) {
    const int lp = static_cast<int>(p.length());
    const NodeId tp = path_target(q, p);
    for (const auto& [r, d] : b.terms_) {
      if (lp + static_cast<int>(r.length()) > n) break;  // terms are sorted by length
      if (path_source(q, r) != tp) continue;
      if (p.empty()) {
        accumulate(out.terms_, r, c * d);
      } else if (r.empty()) {
        accumulate(out.terms_, p, c * d);
      } else {
        Path pr = p;
        pr.arrows.insert(pr.arrows.end(), r.arrows.begin(), r.arrows.end());
        accumulate(out.terms_, std::move(pr), c * d);
      }
    }
  }
  return out;
}

bool operator==(const JetElem& a, const JetElem& b) {
  return a.truncation_ == b.truncation_ && same_quiver(a.quiver_, b.quiver_) && a.terms_ == b.terms_;
}

void require_same_context(const JetElem& a, const JetElem& b) {
  check_context(a.quiver_ptr(), a.truncation(), b.quiver_ptr(), b.truncation());
}

JetElem add(const JetElem& x, const JetElem& y) { return x + y; }
JetElem scale(const Rational& c, const JetElem& x) { return c * x; }
JetElem multiply(const JetElem& x, const JetElem& y) { return x * y; }
JetElem commutator(const JetElem& x, const JetElem& y) { return x * y - y * x; }

std::string to_string(const JetElem& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, c] : f.terms()) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != Rational(1)) out += mag.str() + " ";
    out += path_to_string(f.quiver(), p);
  }
  return out;
}

TensorJet::TensorJet(QuiverPtr quiver, int truncation) : quiver_(std::move(quiver)), truncation_(truncation) {
  if (!quiver_) throw ContextError("tensor element without a quiver");
  if (truncation_ < 1) throw DomainError("truncation order must be positive");
}

void TensorJet::add_term(const Path& left, const Path& right, const Rational& c) {
  if (static_cast<int>(left.length() + right.length()) > truncation_) return;
  accumulate(terms_, Key{left, right}, c);
}

TensorJet& TensorJet::operator+=(const TensorJet& o) {
  check_context(quiver_, truncation_, o.quiver_, o.truncation_);
  for (const auto& [k, c] : o.terms_) accumulate(terms_, k, c);
  return *this;
}

TensorJet& TensorJet::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

bool operator==(const TensorJet& a, const TensorJet& b) {
  return a.truncation_ == b.truncation_ && same_quiver(a.quiver_, b.quiver_) && a.terms_ == b.terms_;
}

namespace {

// Sum over terms of x·p (or p·x) as individual paths; keeps total degree bound.
void for_each_product(const Quiver& q, const JetElem& x, const Path& p, bool x_on_left,
                      const std::function<void(const Path&, const Rational&)>& fn) {
  for (const auto& [w, c] : x.terms()) {
    auto prod = x_on_left ? concat(q, w, p) : concat(q, p, w);
    if (prod) fn(*prod, c);
  }
}

}  // namespace

TensorJet outer_mul(const JetElem& u, const TensorJet& t, const JetElem& v) {
  check_context(u.quiver_ptr(), u.truncation(), t.quiver_ptr(), t.truncation());
  require_same_context(u, v);
  const Quiver& q = t.quiver();
  TensorJet out(t.quiver_ptr(), t.truncation());
  for (const auto& [key, c] : t.terms()) {
    for_each_product(q, u, key.first, true, [&](const Path& left, const Rational& cu) {
      for_each_product(q, v, key.second, false,
                       [&](const Path& right, const Rational& cv) { out.add_term(left, right, c * cu * cv); });
    });
  }
  return out;
}

TensorJet inner_mul(const JetElem& u, const TensorJet& t, const JetElem& v) {
  check_context(u.quiver_ptr(), u.truncation(), t.quiver_ptr(), t.truncation());
  require_same_context(u, v);
  const Quiver& q = t.quiver();
  TensorJet out(t.quiver_ptr(), t.truncation());
  for (const auto& [key, c] : t.terms()) {
    for_each_product(q, v, key.first, false, [&](const Path& left, const Rational& cv) {
      for_each_product(q, u, key.second, true,
                       [&](const Path& right, const Rational& cu) { out.add_term(left, right, c * cu * cv); });
    });
  }
  return out;
}

JetElem mu_hat(const TensorJet& t) {
  JetElem out(t.quiver_ptr(), t.truncation());
  for (const auto& [key, c] : t.terms()) {
    if (auto p = concat(t.quiver(), key.first, key.second)) out.add_term(*p, c);
  }
  return out;
}

TensorJet tau_hat(const TensorJet& t) {
  TensorJet out(t.quiver_ptr(), t.truncation());
  for (const auto& [key, c] : t.terms()) out.add_term(key.second, key.first, c);
  return out;
}

}  // namespace qpcalc
