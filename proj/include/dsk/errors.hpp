#pragma once

#include <stdexcept>
#include <string>

namespace dsk {

// Failure categories surfaced by the engine. Tests and callers match on
// these codes rather than on message text.
enum class Errc {
  invalid_name,
  invalid_cardinality,
  duplicate_member,
  unresolved_requirement,
  name_collision,
  unknown_member,
  restore_of_untouched,
  cannot_derive,
  duplicate_non,
  base_mismatch,
  unknown_base,
  empty_attribute,
  empty_list,
  malformed_graph,
  syntax_error,
  duplicate_name,
  unknown_reference,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

// Parse failure carrying a 1-based source position.
class ParseError : public Error {
public:
  ParseError(Errc code, int line, int col, const std::string& message)
      : Error(code, std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line_(line),
        col_(col) {}

  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

private:
  int line_;
  int col_;
};

}  // namespace dsk
