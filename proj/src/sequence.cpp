#include "mdl/sequence.hpp"

#include "mdl/errors.hpp"

namespace mdl {

Sequence parse_sequence(std::string_view digits) {
  Sequence out;
  out.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw AlphabetMismatch(std::string("non-digit symbol '") + c + "'");
    out.push_back(static_cast<Symbol>(c - '0'));
  }
  return out;
}

std::string format_sequence(SymbolSpan x) {
  std::string out;
  out.reserve(x.size());
  for (Symbol s : x) out.push_back(static_cast<char>('0' + s));
  return out;
}

}  // namespace mdl
