#pragma once

// Text forms of elements and module vectors.
//
//   element  := term (('+'|'-') term)*      (leading sign allowed, "0" is zero)
//   term     := [scalar '*'] word
//   word     := mode-op* ket
//   mode-op  := ('a'|'L') '[' rational ']'
//   ket      := '|0>' | '|tw>' | '|h=' rational '>'
//
// Whitespace is insignificant. Letters are applied right to left to the ket.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "twzhu/module.hpp"
#include "twzhu/voa.hpp"

namespace twzhu {

/// Syntax or semantic error with the 0-based offset where it was detected.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

std::string formatElement(const VoaBackend& backend, const Element& v);
std::string formatModuleVector(const ModuleBackend& module, const ModuleVector& v);

/// Parses an element of V (ket |0>).
Element parseElement(const VoaBackend& backend, std::string_view text);
/// Parses a vector of the given module (ket must be module.ket()).
ModuleVector parseModuleVector(const ModuleBackend& module, std::string_view text);

/// Minimal cursor shared by the element and monomial parsers.
class TextCursor {
 public:
  explicit TextCursor(std::string_view text) : text_(text) {}

  void skipSpace();
  bool atEnd();
  std::size_t position() const { return pos_; }
  char peek();
  bool accept(std::string_view token);
  void expect(std::string_view token);
  /// Optional '-' followed by digits and an optional '/' digits.
  std::string rational();
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  std::string_view rest() const { return text_.substr(pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Parses an element at the cursor, stopping before any character that
/// cannot continue it (used for nested forms such as J[..](element)).
ModuleVector parseModuleVectorAt(const ModuleBackend& module, TextCursor& cur);

}  // namespace twzhu
