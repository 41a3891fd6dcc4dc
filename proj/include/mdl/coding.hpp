#pragma once

// Two-part code: model index header, Elias-gamma length, arithmetic-code
// payload computed by exact interval refinement.

#include <string>
#include <vector>

#include "mdl/model_class.hpp"

namespace mdl {

using Bits = std::string;  // '0' / '1'

struct TwoPartCode {
  std::size_t model_index = 0;
  Bits header;
  Bits length_field;
  Bits payload;
  std::size_t total_bits() const { return header.size() + length_field.size() + payload.size(); }
  Bits bits() const { return header + length_field + payload; }
};

// Shannon-Fano-Elias codeword of model i: ceil(-lb w_i) + 1 leading bits of
// sum_{j<i} w_j + w_i / 2.
Bits header_codeword(const WeightedClass& c, std::size_t index);
Bits elias_gamma(std::uint64_t n);  // n >= 1

struct Interval {
  Rational low;
  Rational width;
};
// [S_{j-1}, S_j) of x among all strings of its length in lexicographic order.
Interval sequential_interval(const Semimeasure& model, SymbolSpan x);
Interval block_interval(const Semimeasure& model, SymbolSpan x);

// Smallest multiple of 2^-L in [low, low + width) as L bits, L = ceil(-lb width).
Bits dyadic_payload(const Interval& iv);

TwoPartCode encode(const WeightedClass& c, std::size_t index, SymbolSpan x);
Sequence decode(const WeightedClass& c, const Bits& bits);
Sequence decode(const WeightedClass& c, const Bits& bits, std::size_t* model_index);

struct CodeLengthRow {
  std::size_t index = 0;
  std::string model;
  std::size_t header_bits = 0;
  std::size_t length_bits = 0;
  std::size_t payload_bits = 0;
  std::size_t total_bits = 0;
  std::int64_t ceil_kw = 0;
  std::int64_t ceil_knu = 0;
  bool chosen = false;
  bool within_constant = false;  // total <= ceil Kw + ceil Knu + 2 ceil lb(n+1) + 3
};

struct CodeLengthReport {
  std::vector<CodeLengthRow> rows;
  std::size_t chosen = 0;
  bool chosen_near_minimal = false;  // chosen ceil Kw + ceil Knu within 2 bits of the best row
};

CodeLengthReport code_length_report(const WeightedClass& c, SymbolSpan x, const TieBreak& tb = {});

// sum over x in X^n with nu(x) > 0 of 2^-payload_bits(x).
Rational kraft_sum(const Semimeasure& model, std::size_t n);

std::string bits_to_hex(const Bits& bits);
Bits hex_to_bits(const std::string& hex, std::size_t bit_count);

}  // namespace mdl
