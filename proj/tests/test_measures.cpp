#include <doctest.h>

#include "mdl/errors.hpp"
#include "mdl/measures.hpp"
#include "mdl/random.hpp"

using namespace mdl;

namespace {
Rational mass(const Semimeasure& m, const char* x) {
  auto s = parse_sequence(x);
  return evaluate(m, s).rational();
}
Rational cond(const Semimeasure& m, Symbol a, const char* x) {
  auto s = parse_sequence(x);
  return conditional(m, a, s).rational();
}
}  // namespace

TEST_SUITE("measures") {
  TEST_CASE("evaluate") {
    CHECK(mass(*uniform_measure(), "110") == Rational(1, 8));
    DeterministicModel ones({}, {1});
    CHECK(mass(ones, "10") == 0);
    CHECK(mass(ones, "111") == 1);
    OscillatingMartingaleMeasure osc;
    CHECK(mass(osc, "0") == Rational(5, 16));
    CHECK(osc.f_value(parse_sequence("0")) == Rational(5, 8));
    CHECK(mass(IidModel({Rational(1, 4), Rational(3, 4)}), "1100") == Rational(9, 256));
  }

  TEST_CASE("conditional") {
    IidModel m({Rational(1, 4), Rational(3, 4)});
    CHECK(cond(m, 1, "00") == Rational(3, 4));
    DeterministicModel ones({}, {1});
    CHECK(cond(ones, 0, "11") == 0);
    auto pair = make_example4_pair();
    CHECK(cond(*pair.second, 1, "") == Rational(1, 2));
    CHECK(cond(*pair.first, 1, "") == Rational(3, 4));
    CHECK(cond(*pair.second, 1, "1") == Rational(7, 8));
    // a zero-mass history has conditional 0
    CHECK(cond(ones, 1, "0") == 0);
  }

  TEST_CASE("log mode agrees with exact mode") {
    IidModel m({Rational(1, 3), Rational(2, 3)});
    auto x = parse_sequence("0110101");
    CHECK(evaluate(m, x, Mode::log_float).to_double() == doctest::Approx(evaluate(m, x).to_double()));
  }

  TEST_CASE("semimeasure checks") {
    auto r = check_semimeasure(IidModel({Rational(1, 3), Rational(2, 3)}), 6);
    CHECK(r.passed);
    CHECK(r.all_equalities);
    LeakySemimeasure leaky(uniform_measure(), Rational(1, 4));
    auto l = check_semimeasure(leaky, 5);
    CHECK(l.passed);
    CHECK(l.all_strict);
    CHECK_FALSE(l.all_equalities);
    auto o = check_semimeasure(OscillatingMartingaleMeasure(), 10);
    CHECK(o.passed);
    CHECK(o.all_equalities);
  }

  TEST_CASE("leaky mass shrinks geometrically") {
    LeakySemimeasure leaky(uniform_measure(), Rational(1, 4));
    CHECK(mass(leaky, "0") + mass(leaky, "1") == Rational(3, 4));
  }

  TEST_CASE("sampling") {
    DeterministicModel ones({}, {1});
    for (std::uint64_t s : {1u, 2u, 99u}) CHECK(format_sequence(sample_sequence(ones, 4, s)) == "1111");
    CHECK(format_sequence(sample_sequence(IidModel({Rational(1), Rational(0)}), 3, 5)) == "000");
    int ok = 0;
    for (std::uint64_t s = 0; s < 30; ++s) {
      auto x = sample_sequence(*uniform_measure(), 100000, s);
      double ones_count = 0;
      for (auto v : x) ones_count += v;
      if (std::abs(ones_count / 1e5 - 0.5) <= 0.01) ++ok;
    }
    CHECK(ok == 30);
    LeakySemimeasure leaky(uniform_measure(), Rational(1, 4));
    CHECK_THROWS_AS(sample_sequence(leaky, 3, 1), NotAMeasure);
  }

  TEST_CASE("example 3 models") {
    auto p = example3_pair();
    CHECK(mass(*p.nu, "01") == 0);
    CHECK(mass(*p.nu, "1") == 1);
    CHECK(mass(*p.nu, "101") == Rational(1, 4));
    CHECK(mass(*p.lambda, "11") == Rational(1, 4));
  }

  TEST_CASE("factorizable profile hooks") {
    IidModel m({Rational(1, 5), Rational(4, 5)});
    CHECK(m.is_factorizable());
    REQUIRE(m.stochasticity_floor());
    CHECK(*m.stochasticity_floor() == Rational(1, 5));
    auto pair = make_example4_pair();
    CHECK((*pair.first->step_distribution(2))[1] == Rational(3, 4));
    CHECK((*pair.first->step_distribution(3))[1] == Rational(15, 16));
    CHECK(OscillatingMartingaleMeasure().is_factorizable() == false);
  }
}
