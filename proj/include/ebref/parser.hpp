#ifndef EBREF_PARSER_HPP
#define EBREF_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ebref/ast.hpp"

namespace ebref {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(std::string msg, int l, int c)
      : std::runtime_error(std::move(msg) + " (line " + std::to_string(l) +
                           ", col " + std::to_string(c) + ")"),
        line(l),
        col(c) {}
};

/// Parse and typecheck one machine. `abstract` supplies the variable scope of
/// the refined machine so that a linking invariant J(v,w) can be checked; it
/// is required whenever the text declares `refines` and its invariant
/// mentions foreign variables.
Machine parse_machine(std::string_view text, const Machine* abstract = nullptr);

/// Parse a refinement chain from machine texts in abstract-to-concrete order.
/// Each pair is (display name, text). Validates the refinesMachine links.
RefinementChain parse_chain(
    const std::vector<std::pair<std::string, std::string>>& named_texts);

}  // namespace ebref

#endif
