#include <doctest.h>

#include <cmath>

#include "mdl/errors.hpp"
#include "mdl/numeric.hpp"
#include "mdl/random.hpp"

using namespace mdl;

TEST_SUITE("numeric") {
  TEST_CASE("parse and print rationals") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(to_string(parse_rational("3/6")) == "1/2");
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(Rational(4)) == "4");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
  }

  TEST_CASE("mode names") {
    CHECK(parse_mode("exact") == Mode::exact);
    CHECK(parse_mode("float") == Mode::log_float);
    CHECK_THROWS(parse_mode("fast"));
  }

  TEST_CASE("ceil of negative binary log") {
    CHECK(ceil_neg_log2(Rational(1)) == 0);
    CHECK(ceil_neg_log2(Rational(1, 2)) == 1);
    CHECK(ceil_neg_log2(Rational(1, 3)) == 2);
    CHECK(ceil_neg_log2(Rational(9, 256)) == 5);
    CHECK(ceil_neg_log2(pow2(-40)) == 40);
    CHECK(pow2(-3) == Rational(1, 8));
    CHECK(pow2(4) == Rational(16));
  }

  TEST_CASE("log of tiny rationals") {
    CHECK(log_of(pow2(-3000)) == doctest::Approx(-3000 * std::log(2.0)));
    CHECK(std::isinf(log_of(Rational(0))));
    CHECK(log_of(Rational(3)) == doctest::Approx(std::log(3.0)));
  }

  TEST_CASE("log float arithmetic") {
    auto a = LogFloat::from_double(0.25), b = LogFloat::from_double(0.5);
    CHECK((a + b).to_double() == doctest::Approx(0.75));
    CHECK((b - a).to_double() == doctest::Approx(0.25));
    CHECK((a * b).to_double() == doctest::Approx(0.125));
    CHECK((a / b).to_double() == doctest::Approx(0.5));
    CHECK((a - a).is_zero());
    CHECK(LogFloat::zero() + a == a);
    CHECK(a < b);
  }

  TEST_CASE("values in both modes") {
    Value e = Value::of(Rational(1, 3), Mode::exact);
    Value f = Value::of(Rational(1, 3), Mode::log_float);
    CHECK(e.is_exact());
    CHECK_FALSE(f.is_exact());
    CHECK((e + e).rational() == Rational(2, 3));
    CHECK((f + f).to_double() == doctest::Approx(2.0 / 3));
    CHECK(e.to_mode(Mode::log_float).to_double() == doctest::Approx(1.0 / 3));
    CHECK(tied(f, Value::of(Rational(1, 3), Mode::log_float)));
    CHECK_FALSE(tied(e, Value::of(Rational(1, 4), Mode::exact)));
  }

  TEST_CASE("seed derivation and draws are reproducible") {
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
    Rng c(7);
    for (int i = 0; i < 1000; ++i) {
      auto v = c.uniform_int(-3, 5);
      CHECK(v >= -3);
      CHECK(v <= 5);
    }
  }

  TEST_CASE("parallel_for covers every index once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
}
