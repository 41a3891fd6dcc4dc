#include <doctest.h>

#include "mdl/stabilization.hpp"

using namespace mdl;

namespace {
Sequence ones(std::size_t n) { return Sequence(n, 1); }
}  // namespace

TEST_SUITE("stabilization") {
  TEST_CASE("map traces") {
    auto single = bernoulli_class({Rational(1, 3)}, std::vector<Rational>{Rational(1)}, 0);
    auto s = map_trace(single, parse_sequence("0110"));
    CHECK(s.index == std::vector<std::size_t>{0, 0, 0, 0, 0});

    auto rr = map_trace(example3_class(), ones(6), {TiePolicy::round_robin, 0});
    CHECK(rr.index == std::vector<std::size_t>{0, 1, 0, 1, 0, 1, 0});

    auto e1 = map_trace(example1_class(5), ones(7));
    CHECK(e1.index == std::vector<std::size_t>{0, 1, 2, 3, 4, 4, 4, 4});
  }

  TEST_CASE("stabilization verdicts") {
    MapTrace constant{std::vector<std::size_t>(101, 2), std::vector<bool>(101, false)};
    auto c = stabilization_verdict(constant, 50);
    REQUIRE(c.stabilized_by);
    CHECK(*c.stabilized_by == 0);
    CHECK(c.final_index == 2);

    auto rr = map_trace(example3_class(), ones(100), {TiePolicy::round_robin, 0});
    CHECK_FALSE(stabilization_verdict(rr, 50).stabilized_by);

    MapTrace late{std::vector<std::size_t>(101, 0), std::vector<bool>(101, false)};
    for (std::size_t t = 3; t <= 100; ++t) late.index[t] = 1;
    auto v = stabilization_verdict(late, 50);
    REQUIRE(v.stabilized_by);
    CHECK(*v.stabilized_by == 3);
    CHECK(v.change_count == 1);
  }

  TEST_CASE("monte carlo stabilization") {
    auto single = bernoulli_class({Rational(1, 3)}, std::vector<Rational>{Rational(1)}, 0);
    StabilizationOptions opt;
    opt.horizon = 100;
    opt.window = 20;
    opt.samples = 20;
    CHECK(monte_carlo_stabilization(single, opt).fraction_stabilized == 1);
    auto iid = bernoulli_class({Rational(1, 5), Rational(2, 5), Rational(3, 5), Rational(4, 5)}, std::nullopt, 1);
    opt.horizon = 2000;
    opt.window = 500;
    opt.samples = 100;
    opt.threads = 2;
    opt.mode = Mode::log_float;
    CHECK(monte_carlo_stabilization(iid, opt).fraction_stabilized >= 0.95);
  }

  TEST_CASE("class profiles") {
    auto iid = bernoulli_class({Rational(1, 5), Rational(2, 5)}, std::nullopt, 1);
    auto p = profile_class(iid, 10);
    CHECK(p.all_factorizable);
    REQUIRE(p.uniform_stochasticity_delta);
    CHECK(*p.uniform_stochasticity_delta == Rational(1, 5));

    auto e4 = profile_class(example4_class(Rational(1, 2), Rational(1, 2)), 40);
    CHECK(e4.all_factorizable);
    CHECK_FALSE(e4.uniform_stochasticity_delta);

    CHECK_FALSE(profile_class(example5_class(), 4).all_factorizable);
  }

  TEST_CASE("hybrid values on the example 3 sequence") {
    auto x = parse_sequence("1101001");
    auto h = hybrid_on_sequence(example3_class(), x, {TiePolicy::round_robin, 0});
    REQUIRE(h.size() == x.size());
    for (std::size_t t = 2; t <= x.size(); ++t) {
      CHECK(h[t - 1].rational() == (t % 2 == 1 ? Rational(1) : Rational(1, 4)));
    }
    CHECK(count_alternations(h) >= x.size() - 2);
    CHECK(is_oscillating(h, 4));
  }

  TEST_CASE("example 4 ratio") {
    auto tr = ratio_trace(example4_class(Rational(1, 2), Rational(1, 2)), 60);
    CHECK(tr.ratio.size() == 61);
    CHECK(tr.ratio[0] == 1);
    CHECK(tr.ratio[1] == Rational(2, 3));
    CHECK(tr.argmax_changes == 0);
    CHECK(tr.increment_sign_changes >= 5);
  }

  TEST_CASE("martingale construction") {
    auto m = check_martingale_identity(12);
    CHECK(m.identity_holds);
    CHECK(m.nodes == 8191);
    auto dead = dead_mass_by_depth(20);
    CHECK(dead.size() == 21);
    for (std::size_t n = 1; n < dead.size(); ++n) {
      CHECK(dead[n] <= Rational(1, 4));
      CHECK(dead[n] >= dead[n - 1]);
    }
  }
}
