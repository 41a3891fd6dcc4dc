#include "mdl/coding.hpp"

#include <algorithm>
#include <cctype>

#include "mdl/errors.hpp"

namespace mdl {

namespace {

// First `count` bits of the binary expansion of r in [0, 1).
Bits leading_bits(Rational r, std::int64_t count) {
  Bits out;
  for (std::int64_t i = 0; i < count; ++i) {
    r *= 2;
    if (r >= 1) {
      out.push_back('1');
      r -= 1;
    } else {
      out.push_back('0');
    }
  }
  return out;
}

void require_measure(const Semimeasure& m) {
  if (!m.is_proper_measure()) throw NotAMeasure("arithmetic coding needs a proper measure: " + m.name());
}

std::int64_t ceil_lb(std::uint64_t n) {
  std::int64_t k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

}  // namespace

Bits header_codeword(const WeightedClass& c, std::size_t index) {
  Rational before(0);
  for (std::size_t j = 0; j < index; ++j) before += c.weight(j);
  const Rational& w = c.weight(index);
  return leading_bits(before + w / 2, ceil_neg_log2(w) + 1);
}

Bits elias_gamma(std::uint64_t n) {
  if (n == 0) throw Error("Elias gamma needs n >= 1");
  Bits binary;
  for (std::uint64_t v = n; v; v >>= 1) binary.push_back(v & 1 ? '1' : '0');
  std::reverse(binary.begin(), binary.end());
  return Bits(binary.size() - 1, '0') + binary;
}

Interval sequential_interval(const Semimeasure& model, SymbolSpan x) {
  require_measure(model);
  Interval iv{Rational(0), model.empty_mass()};
  auto cursor = model.start();
  for (Symbol s : x) {
    if (s >= model.alphabet_size()) throw AlphabetMismatch("symbol outside model alphabet");
    for (Symbol a = 0; a < s; ++a) iv.low += iv.width * cursor->conditional(a);
    iv.width *= cursor->conditional(s);
    cursor->advance(s);
  }
  return iv;
}

Interval block_interval(const Semimeasure& model, SymbolSpan x) {
  require_measure(model);
  const std::size_t n = x.size();
  const std::size_t k = model.alphabet_size();
  Sequence y(n, 0);
  Rational cumulative(0);
  for (;;) {
    Rational p = evaluate(model, y).rational();
    if (y == Sequence(x.begin(), x.end())) return Interval{cumulative, p};
    cumulative += p;
    std::size_t i = n;
    while (i > 0 && y[i - 1] + 1u == k) y[--i] = 0;
    if (i == 0) break;
    ++y[i - 1];
  }
  throw Error("string not found in block enumeration");
}

Bits dyadic_payload(const Interval& iv) {
  if (sgn(iv.width) <= 0) throw ZeroProbability("string has probability zero");
  const std::int64_t L = ceil_neg_log2(iv.width);
  mpz_class scaled = iv.low.get_num() << static_cast<mp_bitcnt_t>(L);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), iv.low.get_den_mpz_t());
  Bits out(static_cast<std::size_t>(L), '0');
  for (std::int64_t i = 0; i < L; ++i) {
    if (mpz_tstbit(q.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) out[static_cast<std::size_t>(L - 1 - i)] = '1';
  }
  return out;
}

TwoPartCode encode(const WeightedClass& c, std::size_t index, SymbolSpan x) {
  const auto& model = c.model(index);
  TwoPartCode code;
  code.model_index = index;
  code.header = header_codeword(c, index);
  code.length_field = elias_gamma(x.size() + 1);
  code.payload = dyadic_payload(sequential_interval(model, x));
  return code;
}

Sequence decode(const WeightedClass& c, const Bits& bits) { return decode(c, bits, nullptr); }

Sequence decode(const WeightedClass& c, const Bits& bits, std::size_t* model_index) {
  for (char b : bits) {
    if (b != '0' && b != '1') throw MalformedCode("bit string contains non-binary characters");
  }
  std::vector<Bits> words;
  std::size_t longest = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    words.push_back(header_codeword(c, i));
    longest = std::max(longest, words.back().size());
  }
  std::optional<std::size_t> index;
  std::size_t pos = 0;
  for (std::size_t len = 1; len <= std::min(longest, bits.size()) && !index; ++len) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i].size() == len && bits.compare(0, len, words[i]) == 0) {
        index = i;
        pos = len;
        break;
      }
    }
  }
  if (!index) throw MalformedCode("no model header matches");
  if (model_index) *model_index = *index;

  std::size_t zeros = 0;
  while (pos < bits.size() && bits[pos] == '0') {
    ++zeros;
    ++pos;
  }
  if (zeros > 62 || pos + zeros + 1 > bits.size()) throw MalformedCode("truncated length field");
  std::uint64_t n1 = 0;
  for (std::size_t i = 0; i <= zeros; ++i) n1 = (n1 << 1) | static_cast<std::uint64_t>(bits[pos + i] - '0');
  pos += zeros + 1;
  const std::size_t n = static_cast<std::size_t>(n1 - 1);

  const Bits payload = bits.substr(pos);
  const auto& model = c.model(*index);
  require_measure(model);
  Rational z(0);
  {
    mpz_class num(0);
    for (char b : payload) num = (num << 1) + (b - '0');
    z = Rational(num) * pow2(-static_cast<std::int64_t>(payload.size()));
  }

  Sequence x;
  x.reserve(n);
  Interval iv{Rational(0), model.empty_mass()};
  auto cursor = model.start();
  const std::size_t k = model.alphabet_size();
  for (std::size_t t = 0; t < n; ++t) {
    Rational low = iv.low;
    bool found = false;
    for (Symbol a = 0; a < k; ++a) {
      Rational w = iv.width * cursor->conditional(a);
      if (sgn(w) > 0 && z >= low && z < low + w) {
        x.push_back(a);
        iv = Interval{low, w};
        cursor->advance(a);
        found = true;
        break;
      }
      low += w;
    }
    if (!found) throw MalformedCode("payload lies outside every subinterval");
  }
  if (dyadic_payload(iv) != payload) throw MalformedCode("payload is not the code of the decoded string");
  return x;
}

CodeLengthReport code_length_report(const WeightedClass& c, SymbolSpan x, const TieBreak& tb) {
  CodeLengthReport rep;
  rep.chosen = map_estimator(c, x, tb).index;
  const std::int64_t slack = 2 * ceil_lb(x.size() + 1) + 3;
  std::optional<std::int64_t> best;
  std::int64_t chosen_cost = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& m = c.model(i);
    if (!m.is_proper_measure()) continue;
    Rational p = evaluate(m, x).rational();
    if (sgn(p) == 0) continue;
    auto code = encode(c, i, x);
    CodeLengthRow row;
    row.index = i;
    row.model = m.name();
    row.header_bits = code.header.size();
    row.length_bits = code.length_field.size();
    row.payload_bits = code.payload.size();
    row.total_bits = code.total_bits();
    row.ceil_kw = ceil_neg_log2(c.weight(i));
    row.ceil_knu = ceil_neg_log2(p);
    row.chosen = i == rep.chosen;
    row.within_constant = static_cast<std::int64_t>(row.total_bits) <= row.ceil_kw + row.ceil_knu + slack;
    const std::int64_t cost = row.ceil_kw + row.ceil_knu;
    if (!best || cost < *best) best = cost;
    if (row.chosen) chosen_cost = cost;
    rep.rows.push_back(row);
  }
  rep.chosen_near_minimal = best && chosen_cost <= *best + 2;
  return rep;
}

Rational kraft_sum(const Semimeasure& model, std::size_t n) {
  require_measure(model);
  Rational total(0);
  struct Item {
    std::size_t depth;
    Rational mass;
    std::unique_ptr<Cursor> cursor;
  };
  std::vector<Item> stack;
  stack.push_back({0, model.empty_mass(), model.start()});
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    if (sgn(it.mass) == 0) continue;
    if (it.depth == n) {
      total += pow2(-ceil_neg_log2(it.mass));
      continue;
    }
    for (Symbol a = 0; a < model.alphabet_size(); ++a) {
      auto next = it.cursor->clone();
      Rational m = it.mass * next->conditional(a);
      next->advance(a);
      stack.push_back({it.depth + 1, std::move(m), std::move(next)});
    }
  }
  return total;
}

std::string bits_to_hex(const Bits& bits) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int v = 0;
    for (std::size_t j = 0; j < 4; ++j) v = (v << 1) | (i + j < bits.size() && bits[i + j] == '1');
    out.push_back(digits[v]);
  }
  return out;
}

Bits hex_to_bits(const std::string& hex, std::size_t bit_count) {
  Bits out;
  for (char ch : hex) {
    int v;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (std::tolower(ch) >= 'a' && std::tolower(ch) <= 'f') v = std::tolower(ch) - 'a' + 10;
    else throw MalformedCode("invalid hex digit");
    for (int j = 3; j >= 0; --j) out.push_back((v >> j) & 1 ? '1' : '0');
  }
  if (bit_count > out.size()) throw MalformedCode("bit count exceeds hex payload");
  out.resize(bit_count);
  return out;
}

}  // namespace mdl
