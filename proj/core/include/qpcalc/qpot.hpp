#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qpcalc/calculus.hpp"
#include "qpcalc/endo.hpp"

namespace qpcalc {

inline constexpr int kDefaultTruncation = 12;

struct QpotDocument {
  QuiverPtr quiver;
  int truncation = kDefaultTruncation;
  Potential potential;
};

// QPOT text:
//   nodes <id> ...
//   arrow <name> <source> <target>
//   truncation <N>
//   potential
//     <rational> <arrow> <arrow> ...
//   end
// "#" starts a comment. Errors are ParseError with line and column.
QpotDocument parse_qpot(std::string_view text);
QuiverPtr parse_quiver(std::string_view text);
std::string print_qpot(const QpotDocument& doc);

// Endomorphism text: lines "map a: <rational> <path>; <rational> <path>; ...".
// Unmapped arrows are sent to themselves.
Endo parse_endo(std::string_view text, const QuiverPtr& quiver, int truncation);
std::string print_endo(const Endo& h);

// "<rational> <path>; <rational> <path>; ..." with "e_<node>" (or "e" on a
// single node) for idempotents.
JetElem parse_element(std::string_view text, const QuiverPtr& quiver, int truncation);

// Throws Error when the file cannot be read.
std::string read_text_file(const std::filesystem::path& file);

}  // namespace qpcalc
