// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "mdl/experiments.hpp"

using namespace mdl;

namespace {

struct Line {
  bool pass = false;
  std::string detail;
};

std::map<std::string, ExperimentReport> runs;

ExperimentReport run(const std::string& name, std::map<std::string, std::string> params = {}, std::size_t threads = 1,
                     const std::string& key = "") {
  ExperimentConfig cfg;
  cfg.experiment = name;
  cfg.params = std::move(params);
  cfg.threads = threads;
  auto r = run_experiment(cfg);
  if (threads == 1) runs[key.empty() ? name : key] = r;
  return r;
}

double real_of(const ExperimentReport& r, const std::string& key) {
  const Scalar* s = r.find(key);
  if (!s) throw std::runtime_error("missing summary key " + key);
  if (auto d = std::get_if<double>(s)) return *d;
  if (auto i = std::get_if<std::int64_t>(s)) return double(*i);
  if (auto q = std::get_if<Rational>(s)) return to_double(*q);
  throw std::runtime_error("summary key " + key + " is not numeric");
}

std::string verdicts_failing(const ExperimentReport& r, const std::string& prefix = "") {
  std::string out;
  for (const auto& v : r.verdicts) {
    if (v.name.rfind(prefix, 0) == 0 && !v.pass) out += " " + v.name + " (" + v.detail + ")";
  }
  return out;
}

bool verdict_ok(const ExperimentReport& r, const std::string& name) {
  for (const auto& v : r.verdicts)
    if (v.name == name) return v.pass;
  return false;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

Line example1_exactness() {
  std::string d;
  bool ok = true;
  for (std::size_t n : {2, 5, 16, 64}) {
    auto r = run("example1", {{"N", std::to_string(n)}}, 1, "example1_N" + std::to_string(n));
    const Scalar* s = r.find("rho_norm_square");
    const Rational expected = Rational(static_cast<long>(n - 1)) / 2;
    const bool exact = s && std::holds_alternative<Rational>(*s) && std::get<Rational>(*s) == expected;
    ok = ok && exact && r.wall_seconds < 1.0 && r.passed();
    d += " N=" + std::to_string(n) + ":" + (s && std::holds_alternative<Rational>(*s) ? to_string(std::get<Rational>(*s)) : "?") +
         " (" + fmt(r.wall_seconds) + " s)";
  }
  return {ok, "S(rho_norm) = (N-1)/2 exactly;" + d};
}

Line bound_suite() {
  auto r = run("bound_suite");
  std::size_t failing = 0, exact_rows = 0;
  bool nonneg = true;
  for (const auto& b : r.bounds) {
    if (!b.report.pass) ++failing;
    if (b.report.slack_exact) {
      ++exact_rows;
      nonneg = nonneg && sgn(*b.report.slack_exact) >= 0;
    }
  }
  const bool ok = real_of(r, "classes") == 200 && failing == 0 && nonneg && r.wall_seconds < 600 && r.bounds.size() == 200 * 14;
  return {ok, std::to_string(r.bounds.size()) + " rows over 200 classes, " + std::to_string(failing) + " failing, " +
                  std::to_string(exact_rows) + " exact rows with nonnegative slack, " + fmt(r.wall_seconds) + " s"};
}

Line lemma_suite() {
  const auto& r = runs.at("bound_suite");
  std::size_t checked = 0;
  for (const auto& v : r.verdicts) checked += v.pass ? 1 : 0;
  const auto bad = verdicts_failing(r);
  return {bad.empty() && r.verdicts.size() == 14,
          std::to_string(checked) + "/" + std::to_string(r.verdicts.size()) +
              " inequality families with zero violations (50 classes at depth 8, 10^4 pairs)" + bad};
}

Line unit_square() {
  auto r = run("unit_square_scan");
  const double v = real_of(r, "max_violation");
  return {v <= 1e-12 && real_of(r, "points") == 2001.0 * 2001.0 && r.wall_seconds < 30,
          "max violation " + fmt(v) + " on 2001x2001, " + fmt(r.wall_seconds) + " s"};
}

Line loss_bounds() {
  auto r = run("loss_bounds");
  std::size_t failing = 0;
  for (const auto& b : r.bounds) failing += b.report.pass ? 0 : 1;
  const double viol = real_of(r, "instantaneous_violations");
  return {failing == 0 && viol == 0 && real_of(r, "cases") == 100 && r.passed(),
          std::to_string(r.bounds.size()) + " regret rows, " + std::to_string(failing) + " failing, " +
              fmt(real_of(r, "nodes_checked")) + " nodes with " + fmt(viol) + " instantaneous violations"};
}

Line example3() {
  auto r = run("example3_hybrid");
  const bool ok = verdict_ok(r, "hybrid_alternates_quarter_and_one") && verdict_ok(r, "normalized_predictions_are_half") &&
                  verdict_ok(r, "largest_weight_map_constant");
  return {ok, "hybrid alternates 1/4,1 for t in 2..100; normalized predictions 1/2; largest-weight map constant" +
                  verdicts_failing(r)};
}

Line example5() {
  auto r = run("example5_martingale");
  const double frac = real_of(r, "non_stabilized_fraction");
  return {r.passed() && frac >= 0.5,
          "identity to depth 12, max dead mass " + fmt(real_of(r, "max_dead_mass")) +
              ", non-stabilized fraction " + fmt(frac) + verdicts_failing(r)};
}

Line example2() {
  auto r = run("example2_mc");
  const double s = real_of(r, "static_square"), bound = std::log(7.0);
  return {s > bound && verdict_ok(r, "static_square_exceeds_ln_w_inverse"),
          "S(static) = " + fmt(s) + " vs ln 7 = " + fmt(bound) + " at N=6, horizon 14"};
}

Line stabilization() {
  auto r = run("stabilization_mc");
  const double f = real_of(r, "fraction_stabilized");
  return {f >= 0.95 && r.wall_seconds < 120 && r.passed(),
          "stabilized fraction " + fmt(f) + ", " + fmt(r.wall_seconds) + " s"};
}

Line coding() {
  auto r = run("coding_roundtrip");
  return {r.passed() && real_of(r, "roundtrip_ok") == 10000 && real_of(r, "payload_length_exact") == 10000,
          fmt(real_of(r, "roundtrip_ok")) + "/10000 round trips, payload lengths exact, max Kraft sum " +
              fmt(real_of(r, "kraft_max")) + verdicts_failing(r)};
}

Line step_density() {
  auto r = run("regression_demo");
  bool ok = true;
  std::string d;
  for (int n : {3, 9, 27}) {
    const double sq = real_of(r, "step_density_square_n" + std::to_string(n));
    const double kl = real_of(r, "step_density_kl_n" + std::to_string(n));
    const bool good = std::abs(sq - 2.0 * n / 9) <= 1e-8 && std::abs(kl - std::log(2.0) / 3) <= 1e-8;
    ok = ok && good;
    d += " n=" + std::to_string(n) + ": " + fmt(sq) + ", " + fmt(kl);
  }
  return {ok, "square = 2n/9 and KL = ln2/3 within 1e-8;" + d};
}

std::string fingerprint(const ExperimentReport& r) {
  std::string s = report_json(r, false) + ledgers_csv(r) + bounds_csv(r);
  for (const auto& p : r.plots) s += series_tsv(p);
  return s;
}

Line determinism() {
  std::size_t same = 0;
  std::string bad;
  for (const auto& [key, first] : runs) {
    ExperimentConfig cfg = first.config;
    bool identical = true;
    for (std::size_t threads : {4u, 7u}) {
      cfg.threads = threads;
      identical = identical && fingerprint(run_experiment(cfg)) == fingerprint(first);
    }
    if (identical)
      ++same;
    else
      bad += " " + key;
  }
  return {bad.empty(), std::to_string(same) + "/" + std::to_string(runs.size()) +
                           " runs byte-identical at 1, 4 and 7 threads" + (bad.empty() ? "" : "; differs:" + bad)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Line()>> criteria[] = {
      {"example 1 exactness", example1_exactness},
      {"bound suite", bound_suite},
      {"lemma and inequality suite", lemma_suite},
      {"unit-square scan", unit_square},
      {"loss bounds", loss_bounds},
      {"example 3 hybrid ties", example3},
      {"example 5 martingale", example5},
      {"example 2 static exceeds ln w^-1", example2},
      {"stabilization of i.i.d. class", stabilization},
      {"two-part coding", coding},
      {"step densities", step_density},
      {"determinism across threads", determinism},
  };
  int failures = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Line line;
    try {
      line = check();
    } catch (const std::exception& e) {
      line = {false, std::string("error: ") + e.what()};
    }
    if (!line.pass) ++failures;
    std::printf("%s %2d %s: %s\n", line.pass ? "PASS" : "FAIL", index, name, line.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria pass\n", index - failures, index);
  return failures;
}
