#include <doctest.h>

#include "mdl/coding.hpp"
#include "mdl/errors.hpp"

using namespace mdl;

namespace {
WeightedClass quarters() { return bernoulli_class({Rational(1, 4), Rational(1, 2), Rational(3, 4)}, std::nullopt, 1); }
}  // namespace

TEST_SUITE("coding") {
  TEST_CASE("elias gamma") {
    CHECK(elias_gamma(1) == "1");
    CHECK(elias_gamma(2) == "010");
    CHECK(elias_gamma(5) == "00101");
    CHECK(elias_gamma(8) == "0001000");
  }

  TEST_CASE("header codewords are prefix free") {
    auto c = bernoulli_class({Rational(1, 5), Rational(2, 5), Rational(3, 5)},
                             std::vector<Rational>{Rational(1, 2), Rational(1, 3), Rational(1, 8)}, 0);
    std::vector<Bits> h;
    for (std::size_t i = 0; i < c.size(); ++i) h.push_back(header_codeword(c, i));
    CHECK(h[0].size() == 2);
    CHECK(h[1].size() == 3);
    CHECK(h[2].size() == 4);
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = 0; j < h.size(); ++j)
        if (i != j) CHECK(h[j].rfind(h[i], 0) != 0);
  }

  TEST_CASE("payload lengths") {
    auto fair = uniform_measure();
    auto x8 = parse_sequence("01101001");
    CHECK(dyadic_payload(sequential_interval(*fair, x8)).size() == 8);
    DeterministicModel d({1}, {0});
    CHECK(dyadic_payload(sequential_interval(d, parse_sequence("100"))).empty());
    auto q = bernoulli(Rational(1, 4));
    CHECK(dyadic_payload(sequential_interval(*q, parse_sequence("1100"))).size() == 5);
    CHECK_THROWS_AS(dyadic_payload(sequential_interval(d, parse_sequence("11"))), ZeroProbability);
  }

  TEST_CASE("intervals") {
    auto q = bernoulli(Rational(1, 4));
    auto x = parse_sequence("10");
    auto iv = sequential_interval(*q, x);
    CHECK(iv.low == Rational(3, 4));
    CHECK(iv.width == Rational(3, 16));
    auto b = block_interval(*q, x);
    CHECK(b.low == iv.low);
    CHECK(b.width == iv.width);
  }

  TEST_CASE("encode and decode") {
    auto c = quarters();
    auto x = parse_sequence("1100");
    for (std::size_t i = 0; i < 3; ++i) {
      auto code = encode(c, i, x);
      std::size_t model = 99;
      CHECK(decode(c, code.bits(), &model) == x);
      CHECK(model == i);
    }
    auto empty = encode(c, 0, {});
    CHECK(empty.payload.empty());
    CHECK(decode(c, empty.bits()).empty());
  }

  TEST_CASE("malformed codes") {
    auto c = quarters();
    CHECK_THROWS_AS(decode(c, "1"), MalformedCode);
    CHECK_THROWS_AS(decode(c, ""), MalformedCode);
    auto bits = encode(c, 1, parse_sequence("1100")).bits();
    CHECK_THROWS_AS(decode(c, bits + "0"), MalformedCode);
    CHECK_THROWS_AS(decode(c, bits.substr(0, bits.size() - 1)), MalformedCode);
  }

  TEST_CASE("code length report") {
    auto rep = code_length_report(quarters(), parse_sequence("1100"));
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.chosen == 1);
    CHECK(rep.rows[1].ceil_kw + rep.rows[1].ceil_knu == 6);
    CHECK(rep.rows[0].ceil_kw + rep.rows[0].ceil_knu == 7);
    CHECK(rep.rows[1].total_bits < rep.rows[0].total_bits);
    CHECK(rep.chosen_near_minimal);
    for (const auto& r : rep.rows) CHECK(r.within_constant);
    auto one = bernoulli_class({Rational(1, 3)}, std::vector<Rational>{Rational(1)}, 0);
    CHECK(code_length_report(one, parse_sequence("01")).rows.size() == 1);
  }

  TEST_CASE("kraft sums") {
    CHECK(kraft_sum(*uniform_measure(), 6) == 1);
    for (std::size_t n = 1; n <= 10; ++n) CHECK(kraft_sum(*bernoulli(Rational(2, 7)), n) <= 1);
  }

  TEST_CASE("hex") {
    CHECK(bits_to_hex("1010") == "a");
    CHECK(bits_to_hex("10100001") == "a1");
    CHECK(bits_to_hex("101") == "a");
    CHECK(hex_to_bits("a", 3) == "101");
    CHECK(hex_to_bits("a1", 8) == "10100001");
    CHECK_THROWS(hex_to_bits("zz", 8));
  }
}
