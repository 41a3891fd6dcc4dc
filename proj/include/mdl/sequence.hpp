#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdl {

// Symbols of an alphabet of size k are 0..k-1.
using Symbol = std::uint8_t;
using Sequence = std::vector<Symbol>;
using SymbolSpan = std::span<const Symbol>;

struct Alphabet {
  std::size_t size = 2;
};

// "0110" -> {0,1,1,0}. Digits only; alphabets up to size 10.
Sequence parse_sequence(std::string_view digits);
std::string format_sequence(SymbolSpan x);

inline Sequence extended(SymbolSpan x, Symbol a) {
  Sequence out(x.begin(), x.end());
  out.push_back(a);
  return out;
}

}  // namespace mdl
