#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qpcalc {

using NodeId = std::uint16_t;
using ArrowId = std::uint16_t;

// Finite quiver. Declaration order of arrows is the total order used by every
// lexicographic comparison in the library.
class Quiver {
 public:
  struct Arrow {
    std::string name;
    NodeId source;
    NodeId target;
    friend bool operator==(const Arrow&, const Arrow&) = default;
  };

  struct ArrowSpec {
    std::string name;
    std::string source;
    std::string target;
  };

  Quiver() = default;
  // Throws DomainError on duplicate or empty names and dangling node references.
  Quiver(std::vector<std::string> nodes, const std::vector<ArrowSpec>& arrows);

  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t arrow_count() const { return arrows_.size(); }
  [[nodiscard]] const std::string& node_name(NodeId n) const { return nodes_.at(n); }
  [[nodiscard]] const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  [[nodiscard]] const std::vector<std::string>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<Arrow>& arrows() const { return arrows_; }
  [[nodiscard]] NodeId source(ArrowId a) const { return arrows_[a].source; }
  [[nodiscard]] NodeId target(ArrowId a) const { return arrows_[a].target; }

  [[nodiscard]] std::optional<NodeId> find_node(std::string_view name) const;
  [[nodiscard]] std::optional<ArrowId> find_arrow(std::string_view name) const;
  // Arrow id by name; throws DomainError for unknown names.
  [[nodiscard]] ArrowId arrow_id(std::string_view name) const;

  [[nodiscard]] std::vector<ArrowId> loops_at(NodeId n) const;
  [[nodiscard]] std::vector<ArrowId> arrows_between(NodeId s, NodeId t) const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  std::vector<std::string> nodes_;
  std::vector<Arrow> arrows_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

QuiverPtr make_quiver(std::vector<std::string> nodes, const std::vector<Quiver::ArrowSpec>& arrows);

inline bool same_quiver(const QuiverPtr& a, const QuiverPtr& b) {
  return a == b || (a && b && *a == *b);
}

// A path of the quiver. Arrows compose left to right: "ab" is a followed by b.
// The empty path at node `base` is the idempotent e_base; for non-empty paths
// `base` is the source of the first arrow.
struct Path {
  using Arrows = boost::container::small_vector<ArrowId, 14>;

  NodeId base = 0;
  Arrows arrows;

  Path() = default;
  static Path idempotent(NodeId node) {
    Path p;
    p.base = node;
    return p;
  }
  static Path single(const Quiver& q, ArrowId a) {
    Path p;
    p.base = q.source(a);
    p.arrows.push_back(a);
    return p;
  }

  [[nodiscard]] std::size_t length() const { return arrows.size(); }
  [[nodiscard]] bool empty() const { return arrows.empty(); }

  friend bool operator==(const Path& a, const Path& b) {
    return a.base == b.base && a.arrows == b.arrows;
  }
  // Storage order: by length, then lexicographic in arrow order, then base.
  friend bool operator<(const Path& a, const Path& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.arrows != b.arrows) return a.arrows < b.arrows;
    return a.base < b.base;
  }
};

NodeId path_source(const Quiver& q, const Path& p);
NodeId path_target(const Quiver& q, const Path& p);
inline bool is_cycle(const Quiver& q, const Path& p) { return path_source(q, p) == path_target(q, p); }

// Concatenation p·r, or nullopt when t(p) != s(r).
std::optional<Path> concat(const Quiver& q, const Path& p, const Path& r);

// Subpath of arrows [from, from+count); empty subpaths become the idempotent at
// the node where they sit.
Path subpath(const Quiver& q, const Path& p, std::size_t from, std::size_t count);

// Builds a path from arrow ids, validating composability. Throws DomainError.
Path make_path(const Quiver& q, const std::vector<ArrowId>& arrows);

// All rotations of a cycle are compared with this; among equal-length paths the
// one with the larger first differing arrow is larger.
inline int lex_compare(const Path& a, const Path& b) {
  if (a.arrows < b.arrows) return -1;
  if (b.arrows < a.arrows) return 1;
  return 0;
}

// Space-separated arrow names, or "e" (single node quiver) / "e_<node>".
std::string path_to_string(const Quiver& q, const Path& p);
std::vector<std::string> path_to_names(const Quiver& q, const Path& p);

// Enumerates every path of length <= max_length in storage order.
std::vector<Path> all_paths(const Quiver& q, int max_length);

}  // namespace qpcalc
