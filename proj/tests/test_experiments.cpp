#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mdl/errors.hpp"
#include "mdl/experiments.hpp"

using namespace mdl;

TEST_SUITE("experiments") {
  TEST_CASE("registry") {
    CHECK(registry().size() == 12);
    CHECK(find_experiment("example1").name == "example1");
    CHECK_THROWS_AS(find_experiment("nosuch"), ConfigError);
    auto d = describe_text("example5_martingale");
    CHECK(d.find("Example 5") != std::string::npos);
    CHECK(d.find("stay alive") != std::string::npos);
  }

  TEST_CASE("strict config parsing") {
    auto cfg = parse_config(R"({"experiment": "bound_suite", "seed": 7, "horizon": 6, "mode": "exact",
      "class": {"family": "bernoulli", "thetas": ["1/4", "1/2"], "weights": ["1/3", "2/3"], "true_index": 1},
      "tie_break": {"policy": "round_robin", "phase": 1}, "params": {"classes": "3"}})");
    CHECK(cfg.experiment == "bound_suite");
    CHECK(cfg.seed == 7);
    CHECK(*cfg.horizon == 6);
    REQUIRE(cfg.class_spec);
    CHECK(cfg.class_spec->thetas[0] == Rational(1, 4));
    CHECK((*cfg.class_spec->weights)[1] == Rational(2, 3));
    CHECK(cfg.tie_break->policy == TiePolicy::round_robin);
    CHECK(cfg.tie_break->phase == 1);
    CHECK(cfg.params.at("classes") == "3");

    CHECK_THROWS_AS(parse_config(R"({"experiment": "example1", "colour": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"experiment": "x", "class": {"family": "bernoulli", "extra": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"class": {"family": "bernoulli", "thetas": [0.25]}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"mode": "fast"})"), ConfigError);
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  }

  TEST_CASE("config round trip") {
    auto cfg = parse_config(R"({"experiment": "example1", "seed": 3, "params": {"N": "16"}})");
    auto again = parse_config(config_json(cfg));
    CHECK(again.experiment == "example1");
    CHECK(again.seed == 3);
    CHECK(again.params.at("N") == "16");
  }

  TEST_CASE("params") {
    ExperimentConfig cfg;
    cfg.experiment = "example1";
    apply_param(cfg, "N=7");
    CHECK(cfg.params.at("N") == "7");
    CHECK_THROWS_AS(apply_param(cfg, "novalue"), ConfigError);
    cfg.params["bogus"] = "1";
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  }

  TEST_CASE("class building") {
    ClassSpec s;
    s.family = "bernoulli";
    s.thetas = {Rational(1, 4), Rational(3, 4)};
    s.weight_rule = "geometric(1/2)";
    s.true_index = 0;
    auto c = build_class(s);
    CHECK(c.weight(0) == Rational(1, 2));
    CHECK(c.weight(1) == Rational(1, 4));
    s.weight_rule = "wobbly";
    CHECK_THROWS_AS(build_class(s), ConfigError);
    ClassSpec e;
    e.family = "example2";
    e.params["N"] = "3";
    CHECK(build_class(e).size() == 4);
  }

  TEST_CASE("losses") {
    LossSpec t{"table", {Rational(0), Rational(1), Rational(1, 4), Rational(0)}};
    CHECK(build_loss(t)({}, 1, 0) == Rational(1, 4));
    CHECK_THROWS_AS(build_loss(LossSpec{"huber", {}}), ConfigError);
  }

  TEST_CASE("example 1 report") {
    ExperimentConfig cfg;
    cfg.experiment = "example1";
    auto r = run_experiment(cfg);
    CHECK(r.passed());
    auto json = report_json(r, false);
    CHECK(json.find("\"reproduces\"") != std::string::npos);
    CHECK(json.find("wall_seconds") == std::string::npos);
    auto b = bounds_csv(r);
    CHECK(b.rfind("predictor,metric,bound,measured,slack,pass", 0) == 0);
    CHECK(b.find("rho_norm,square,10,2,8,pass") != std::string::npos);
    CHECK(ledgers_csv(r).rfind("t,metric,predictor,value", 0) == 0);
  }

  TEST_CASE("rationals serialize as p/q") {
    ExperimentConfig cfg;
    cfg.experiment = "example4_ratio";
    auto r = run_experiment(cfg);
    auto json = report_json(r);
    CHECK(json.find("\"w_mu\": \"1/2\"") != std::string::npos);
  }

  TEST_CASE("class only where accepted") {
    ExperimentConfig cfg;
    cfg.experiment = "example3_hybrid";
    cfg.class_spec = ClassSpec{};
    cfg.class_spec->family = "bernoulli";
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  }

  TEST_CASE("written outputs") {
    ExperimentConfig cfg;
    cfg.experiment = "example3_hybrid";
    cfg.horizon = 20;
    auto r = run_experiment(cfg);
    auto dir = std::filesystem::temp_directory_path() / "mdl_lab_written_outputs";
    std::filesystem::remove_all(dir);
    write_report(r, dir);
    for (const char* f : {"report.json", "ledgers.csv", "bounds.csv"}) CHECK(std::filesystem::exists(dir / f));
    CHECK(std::filesystem::exists(dir / "plotdata"));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("format_double") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  }
}
