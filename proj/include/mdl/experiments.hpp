#pragma once

// Experiment registry, configuration and serialized reports for mdl-lab.

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mdl/decisions.hpp"
#include "mdl/metrics.hpp"

namespace mdl {

inline constexpr const char* kVersion = "mdl-lab 0.1.0";

struct ClassSpec {
  std::string family;  // bernoulli, example1..example5, random
  std::vector<Rational> thetas;
  // explicit list, or a rule: "uniform", "geometric(r)"
  std::optional<std::vector<Rational>> weights;
  std::optional<std::string> weight_rule;
  std::optional<std::size_t> true_index;
  std::map<std::string, std::string> params;
};

struct LossSpec {
  std::string preset = "zero_one";  // zero_one, absolute, table, history_parity
  std::vector<Rational> table;      // l00, l01, l10, l11 for preset table
};

struct ExperimentConfig {
  std::string experiment;
  std::optional<ClassSpec> class_spec;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> samples;
  std::optional<Mode> mode;
  std::uint64_t seed = 0;
  std::optional<TieBreak> tie_break;
  std::optional<LossSpec> loss;
  std::string out_dir;
  std::size_t threads = 1;
  std::map<std::string, std::string> params;
};

// Strict JSON parsing: unknown fields are a ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& file);
// "k=v"
void apply_param(ExperimentConfig& cfg, const std::string& assignment);

WeightedClass build_class(const ClassSpec& spec);
LossFunction build_loss(const LossSpec& spec);

using Scalar = std::variant<bool, std::int64_t, double, std::string, Rational>;

struct LedgerRow {
  std::size_t t = 0;
  std::string metric;
  std::string predictor;
  Quantity value;
  std::string case_id;
};

struct BoundRow {
  BoundReport report;
  std::string case_id;
};

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

// plotdata/<name>.tsv, first column t (or the x variable).
struct Series {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string anchor;
  std::vector<std::pair<std::string, Scalar>> summary;
  std::vector<LedgerRow> ledgers;
  std::vector<BoundRow> bounds;
  std::vector<Verdict> verdicts;
  std::vector<Series> plots;
  double wall_seconds = 0;

  bool passed() const;
  std::vector<std::string> failures() const;
  const Scalar* find(const std::string& key) const;
};

struct ParamInfo {
  std::string name;
  std::string default_value;
  std::string help;
};

struct ExperimentInfo {
  std::string name;
  std::string anchor;  // the example or result it reproduces
  std::string description;
  std::vector<ParamInfo> params;
  std::size_t default_horizon = 0;
  std::size_t default_samples = 0;
  Mode default_mode = Mode::exact;
  bool accepts_class = false;
  std::function<void(const ExperimentConfig&, ExperimentReport&)> body;
};

const std::vector<ExperimentInfo>& registry();
const ExperimentInfo& find_experiment(const std::string& name);  // ConfigError when unknown
std::string list_text();
std::string describe_text(const std::string& name);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Serialization. include_run adds wall-clock, thread count and output path.
std::string report_json(const ExperimentReport& r, bool include_run = true);
std::string ledgers_csv(const ExperimentReport& r);
std::string bounds_csv(const ExperimentReport& r);
std::string series_tsv(const Series& s);
std::string config_json(const ExperimentConfig& cfg);
void write_report(const ExperimentReport& r, const std::filesystem::path& dir);

// Doubles render with %.17g, infinities as inf / -inf.
std::string format_double(double v);

}  // namespace mdl
