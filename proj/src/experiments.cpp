#include "mdl/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "experiment_runs.hpp"
#include "mdl/errors.hpp"
#include "mdl/random_class.hpp"

namespace mdl {

using json = nlohmann::ordered_json;

namespace {

void check_fields(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ConfigError("unknown field '" + k + "' in " + where);
  }
}

std::string scalar_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) {
    throw ConfigError(where + ": write non-integer numbers as \"p/q\" or decimal strings");
  }
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  throw ConfigError(where + " must be a string or integer");
}

Rational rational_of(const json& v, const std::string& where) {
  try {
    return parse_rational(scalar_text(v, where));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::size_t size_of(const json& v, const std::string& where) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(where + " must be an integer");
  if (v.get<std::int64_t>() < 0) throw ConfigError(where + " must be nonnegative");
  return v.get<std::size_t>();
}

TieBreak tie_of(const json& v) {
  TieBreak tb;
  try {
    if (v.is_string()) {
      tb.policy = parse_tie_policy(v.get<std::string>());
      return tb;
    }
    check_fields(v, {"policy", "phase"}, "tie_break");
    if (v.contains("policy")) tb.policy = parse_tie_policy(v.at("policy").get<std::string>());
    if (v.contains("phase")) tb.phase = size_of(v.at("phase"), "tie_break.phase");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("tie_break: ") + e.what());
  }
  return tb;
}

ClassSpec class_of(const json& v) {
  check_fields(v, {"family", "thetas", "weights", "true_index", "params"}, "class");
  ClassSpec s;
  if (!v.contains("family") || !v.at("family").is_string()) throw ConfigError("class.family is required");
  s.family = v.at("family").get<std::string>();
  if (v.contains("thetas")) {
    if (!v.at("thetas").is_array()) throw ConfigError("class.thetas must be a list");
    for (const auto& t : v.at("thetas")) s.thetas.push_back(rational_of(t, "class.thetas"));
  }
  if (v.contains("weights")) {
    const auto& w = v.at("weights");
    if (w.is_string()) {
      s.weight_rule = w.get<std::string>();
    } else if (w.is_array()) {
      std::vector<Rational> ws;
      for (const auto& e : w) ws.push_back(rational_of(e, "class.weights"));
      s.weights = ws;
    } else {
      throw ConfigError("class.weights must be a list or a rule string");
    }
  }
  if (v.contains("true_index")) s.true_index = size_of(v.at("true_index"), "class.true_index");
  if (v.contains("params")) {
    if (!v.at("params").is_object()) throw ConfigError("class.params must be an object");
    for (const auto& [k, e] : v.at("params").items()) s.params[k] = scalar_text(e, "class.params." + k);
  }
  return s;
}

LossSpec loss_of(const json& v) {
  check_fields(v, {"preset", "table"}, "loss");
  LossSpec s;
  if (v.contains("preset")) s.preset = v.at("preset").get<std::string>();
  if (v.contains("table")) {
    if (!v.at("table").is_array()) throw ConfigError("loss.table must be a list");
    for (const auto& e : v.at("table")) s.table.push_back(rational_of(e, "loss.table"));
  }
  build_loss(s);
  return s;
}

std::string param_or(const ClassSpec& s, const std::string& key, const std::string& fallback) {
  auto it = s.params.find(key);
  return it == s.params.end() ? fallback : it->second;
}

void check_params(const ClassSpec& s, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : s.params) {
    if (!allowed.count(k)) throw ConfigError("unknown class parameter '" + k + "' for family " + s.family);
  }
}

std::size_t size_text(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos == s.size() && v >= 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw ConfigError(what + " must be a nonnegative integer");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_fields(j, {"experiment", "class", "horizon", "samples", "mode", "seed", "tie_break", "loss", "out", "threads",
                   "params"},
               "config");
  ExperimentConfig cfg;
  try {
    if (j.contains("experiment")) cfg.experiment = j.at("experiment").get<std::string>();
    if (j.contains("class")) cfg.class_spec = class_of(j.at("class"));
    if (j.contains("horizon")) cfg.horizon = size_of(j.at("horizon"), "horizon");
    if (j.contains("samples")) cfg.samples = size_of(j.at("samples"), "samples");
    if (j.contains("mode")) cfg.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("seed")) cfg.seed = size_of(j.at("seed"), "seed");
    if (j.contains("tie_break")) cfg.tie_break = tie_of(j.at("tie_break"));
    if (j.contains("loss")) cfg.loss = loss_of(j.at("loss"));
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("threads")) cfg.threads = std::max<std::size_t>(1, size_of(j.at("threads"), "threads"));
    if (j.contains("params")) {
      if (!j.at("params").is_object()) throw ConfigError("params must be an object");
      for (const auto& [k, v] : j.at("params").items()) cfg.params[k] = scalar_text(v, "params." + k);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read config file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_param(ExperimentConfig& cfg, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got '" + assignment + "'");
  cfg.params[assignment.substr(0, eq)] = assignment.substr(eq + 1);
}

WeightedClass build_class(const ClassSpec& s) {
  try {
    if (s.family == "bernoulli") {
      check_params(s, {});
      if (s.thetas.empty()) throw ConfigError("bernoulli class needs thetas");
      std::optional<std::vector<Rational>> weights = s.weights;
      if (s.weight_rule) {
        const std::string& rule = *s.weight_rule;
        if (rule == "uniform" || rule == "uniform(" + std::to_string(s.thetas.size()) + ")") {
          weights = uniform_weights(s.thetas.size()).weights;
        } else if (rule.rfind("geometric(", 0) == 0 && rule.back() == ')') {
          // the leftover geometric mass is deficiency, not an unmaterialized tail
          weights = geometric_weights(s.thetas.size(), parse_rational(rule.substr(10, rule.size() - 11))).weights;
        } else {
          throw ConfigError("unknown weight rule '" + rule + "'");
        }
      }
      auto c = bernoulli_class(s.thetas, weights, s.true_index.value_or(0));
      return c;
    }
    if (s.weights || s.weight_rule || !s.thetas.empty()) {
      throw ConfigError("family " + s.family + " fixes its own parameters and weights");
    }
    WeightedClass c = [&]() -> WeightedClass {
      if (s.family == "example1") {
        check_params(s, {"N"});
        return example1_class(size_text(param_or(s, "N", "5"), "N"));
      }
      if (s.family == "example2") {
        check_params(s, {"N"});
        return example2_class(size_text(param_or(s, "N", "6"), "N"));
      }
      if (s.family == "example3") {
        check_params(s, {});
        return example3_class();
      }
      if (s.family == "example4") {
        check_params(s, {"w_mu", "w_nu"});
        return example4_class(parse_rational(param_or(s, "w_mu", "1/2")), parse_rational(param_or(s, "w_nu", "1/2")));
      }
      if (s.family == "example5") {
        check_params(s, {});
        return example5_class();
      }
      if (s.family == "random") {
        check_params(s, {"seed"});
        return random_class(size_text(param_or(s, "seed", "0"), "seed"));
      }
      throw ConfigError("unknown class family '" + s.family + "'");
    }();
    if (s.true_index) c = c.with_true_index(*s.true_index);
    return c;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("class: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("class: ") + e.what());
  }
}

LossFunction build_loss(const LossSpec& s) {
  if (s.preset == "zero_one") return LossFunction::zero_one();
  if (s.preset == "absolute") return LossFunction::absolute();
  if (s.preset == "history_parity") return LossFunction::history_parity();
  if (s.preset == "table") {
    if (s.table.size() != 4) throw ConfigError("loss table needs four entries l00, l01, l10, l11");
    try {
      return LossFunction::table(s.table[0], s.table[1], s.table[2], s.table[3]);
    } catch (const Error& e) {
      throw ConfigError(std::string("loss: ") + e.what());
    }
  }
  throw ConfigError("unknown loss preset '" + s.preset + "'");
}

bool ExperimentReport::passed() const { return failures().empty(); }

std::vector<std::string> ExperimentReport::failures() const {
  std::vector<std::string> out;
  for (const auto& b : bounds) {
    if (!b.report.pass) {
      out.push_back("bound " + b.report.predictor + " " + b.report.metric + " <= " + b.report.bound_name +
                    (b.case_id.empty() ? "" : " [" + b.case_id + "]") + ": measured " +
                    format_double(b.report.measured) + ", bound " + format_double(b.report.bound));
    }
  }
  for (const auto& v : verdicts) {
    if (!v.pass) out.push_back("verdict " + v.name + ": " + v.detail);
  }
  return out;
}

const Scalar* ExperimentReport::find(const std::string& key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::vector<ExperimentInfo>& registry() {
  static const std::vector<ExperimentInfo> entries = [] {
    std::vector<ExperimentInfo> e;
    e.push_back({"bound_suite",
                 "Bayes-mixture, normalized, dynamic and static MDL bounds and their summary corollary",
                 "Seeded random binary classes checked exactly against every bound in the constant table, plus the "
                 "semimeasure lemma, the xi >= rho >= rho^y chain and the distance dominations.",
                 {{"classes", "200", "number of random classes"},
                  {"lemma_classes", "50", "random classes for the exhaustive inequality suite (0 skips it)"},
                  {"lemma_depth", "8", "tree depth for the inequality suite"},
                  {"pairs", "10000", "random distribution pairs"}},
                 10, 0, Mode::exact, true, runs::bound_suite});
    e.push_back({"example1", "Example 1: deterministic measure concentrated on 1^inf",
                 "Exact ledgers for the class of N deterministic sequences; normalized dynamic MDL square loss "
                 "equals (N-1)/2.",
                 {{"N", "5", "class size"}}, 0, 0, Mode::exact, false, runs::example1});
    e.push_back({"example2_mc", "Example 2: Bernoulli class where the exponential bound is sharp",
                 "Exact static MDL ledger for {1/2} and 1/2 + 2^-k-1 against ln w^-1, plus a long-horizon Monte "
                 "Carlo estimate showing slow growth.",
                 {{"N", "6", "number of alternatives"},
                  {"mc_horizon", "1000", "Monte Carlo horizon (0 skips)"},
                  {"mc_samples", "200", "Monte Carlo paths"}},
                 14, 0, Mode::exact, false, runs::example2_mc});
    e.push_back({"example3_hybrid", "Example 3: hybrid MDL under alternating tie-breaks",
                 "Hybrid on-sequence values alternate between 1/4 and 1 with round-robin ties; normalized static "
                 "and dynamic predictions stay at 1/2; largest-weight ties give a constant choice.",
                 {{"sequence", "", "explicit binary sequence starting with 1 (default: sampled)"}}, 100, 0,
                 Mode::exact, false, runs::example3_hybrid});
    e.push_back({"example4_ratio", "Example 4: factorizable pair whose likelihood quotient oscillates",
                 "Exact quotient w_nu nu(1^t) / (w_mu mu(1^t)) along the all-ones sequence, its increment sign "
                 "changes, and argmax changes for weights calibrated to the quotient.",
                 {{"w_mu", "1/2", "weight of mu"},
                  {"w_nu", "1/2", "weight of nu"},
                  {"calibrate_at", "40", "time whose quotient sets the calibrated weights"}},
                 60, 0, Mode::exact, false, runs::example4_ratio});
    e.push_back({"example5_martingale",
                 "Example 5 and its claim that many sequences stay alive: dependent measure that never stabilizes",
                 "Martingale identity to a fixed depth, dead-prefix mass by depth, and the Monte Carlo fraction "
                 "of paths whose MAP choice still changes in the final window.",
                 {{"identity_depth", "12", "depth for the martingale identity"},
                  {"dead_depth", "20", "depth for dead-prefix mass"},
                  {"window", "500", "final observation window"}},
                 2000, 500, Mode::exact, false, runs::example5_martingale});
    e.push_back({"stabilization_mc", "Stabilization of the MAP choice for factorizable uniformly stochastic classes",
                 "Monte Carlo fraction of paths whose MAP choice is constant over the final window, for an i.i.d. "
                 "class by default.",
                 {{"thetas", "1/5,2/5,3/5,4/5", "Bernoulli parameters when no class is configured"},
                  {"true_index", "1", "index of mu when no class is configured"},
                  {"window", "500", "final observation window"}},
                 2000, 500, Mode::log_float, true, runs::stabilization_mc});
    e.push_back({"loss_bounds", "Loss bounds for MDL-based decisions",
                 "Exact expected-loss traces for random (class, loss) pairs: instantaneous and cumulative regret "
                 "inequalities and the final regret bound per predictor.",
                 {{"cases", "100", "random class and loss pairs"}}, 10, 0, Mode::exact, true, runs::loss_bounds});
    e.push_back({"unit_square_scan", "Boundedness of the loss-difference function on the unit square",
                 "Grid maximum of delta - 2h - 2 sqrt(2 h ell).", {{"m", "2001", "grid points per axis"}}, 0, 0,
                 Mode::log_float, false, runs::unit_square_scan});
    e.push_back({"classification_demo", "Classification with input-conditioned models",
                 "Label-noise channel class over a fixed input sequence; exact square and Hellinger ledgers against "
                 "the 2, 8, 21 w^-1 bounds.",
                 {{"p_values", "1/4,1/2,3/4", "probability that the label equals the input"},
                  {"true_index", "2", "index of mu"},
                  {"inputs", "", "explicit binary inputs (default: sampled)"}},
                 8, 0, Mode::exact, false, runs::classification_demo});
    e.push_back({"regression_demo", "Regression with uniformly bounded densities",
                 "Monte Carlo Hellinger sum of static MDL for a Gaussian class against 21 w^-1, the step "
                 "densities, and quadrature versus the Gaussian closed form.",
                 {{"intercepts", "0,1/2,1", "Gaussian means at u = 0"},
                  {"slope", "0", "common slope in u"},
                  {"sigma", "1", "common standard deviation"},
                  {"true_index", "0", "index of mu"}},
                 20, 1000, Mode::log_float, false, runs::regression_demo});
    e.push_back({"coding_roundtrip", "Two-part code whose length is Kw + K nu + c",
                 "Fuzzed encode/decode round trips, exact payload lengths, Kraft sums and block-enumeration "
                 "cross-checks.",
                 {{"cases", "10000", "fuzz cases"},
                  {"max_length", "24", "longest fuzzed string"},
                  {"kraft_n", "10", "largest length for Kraft sums"},
                  {"block_n", "12", "largest length for the block cross-check"}},
                 0, 0, Mode::exact, false, runs::coding_roundtrip});
    return e;
  }();
  return entries;
}

const ExperimentInfo& find_experiment(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name == name) return e;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string list_text() {
  std::string out;
  for (const auto& e : registry()) out += e.name + std::string(22 - std::min<std::size_t>(21, e.name.size()), ' ') + e.anchor + "\n";
  return out;
}

std::string describe_text(const std::string& name) {
  const auto& e = find_experiment(name);
  std::ostringstream os;
  os << e.name << "\n  reproduces: " << e.anchor << "\n  " << e.description << "\n";
  os << "  defaults: mode " << to_string(e.default_mode);
  if (e.default_horizon) os << ", horizon " << e.default_horizon;
  if (e.default_samples) os << ", samples " << e.default_samples;
  os << (e.accepts_class ? ", accepts a class section" : "") << "\n";
  if (!e.params.empty()) {
    os << "  params:\n";
    for (const auto& p : e.params) {
      os << "    " << p.name << " = " << (p.default_value.empty() ? "\"\"" : p.default_value) << "  " << p.help
         << "\n";
    }
  }
  return os.str();
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto& info = find_experiment(cfg.experiment);
  if (cfg.class_spec && !info.accepts_class) {
    throw ConfigError(cfg.experiment + " builds its own class; remove the class section");
  }
  runs::Params check(info, cfg);  // rejects unknown parameters before any work
  ExperimentReport r;
  r.config = cfg;
  r.anchor = info.anchor;
  const auto start = std::chrono::steady_clock::now();
  info.body(cfg, r);
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json double_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json scalar_json(const Scalar& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return double_json(v);
        } else {
          return v;
        }
      },
      s);
}

json config_object(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = cfg.experiment;
  if (cfg.class_spec) {
    const auto& s = *cfg.class_spec;
    json c;
    c["family"] = s.family;
    if (!s.thetas.empty()) {
      c["thetas"] = json::array();
      for (const auto& t : s.thetas) c["thetas"].push_back(to_string(t));
    }
    if (s.weights) {
      c["weights"] = json::array();
      for (const auto& w : *s.weights) c["weights"].push_back(to_string(w));
    } else if (s.weight_rule) {
      c["weights"] = *s.weight_rule;
    }
    if (s.true_index) c["true_index"] = *s.true_index;
    if (!s.params.empty()) c["params"] = s.params;
    j["class"] = c;
  }
  if (cfg.horizon) j["horizon"] = *cfg.horizon;
  if (cfg.samples) j["samples"] = *cfg.samples;
  if (cfg.mode) j["mode"] = to_string(*cfg.mode);
  j["seed"] = cfg.seed;
  if (cfg.tie_break) j["tie_break"] = {{"policy", to_string(cfg.tie_break->policy)}, {"phase", cfg.tie_break->phase}};
  if (cfg.loss) {
    json l{{"preset", cfg.loss->preset}};
    if (!cfg.loss->table.empty()) {
      l["table"] = json::array();
      for (const auto& t : cfg.loss->table) l["table"].push_back(to_string(t));
    }
    j["loss"] = l;
  }
  j["params"] = cfg.params;
  return j;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string config_json(const ExperimentConfig& cfg) { return config_object(cfg).dump(2); }

std::string report_json(const ExperimentReport& r, bool include_run) {
  json j;
  j["experiment"] = r.config.experiment;
  j["version"] = kVersion;
  j["reproduces"] = r.anchor;
  j["config"] = config_object(r.config);
  const auto& info = find_experiment(r.config.experiment);
  const TieBreak tb = r.config.tie_break.value_or(TieBreak{});
  j["tie_break"] = {{"policy", to_string(tb.policy)}, {"phase", tb.phase}, {"secondary_key", "lowest_index"}};
  j["mode"] = to_string(r.config.mode.value_or(info.default_mode));
  json summary = json::object();
  for (const auto& [k, v] : r.summary) summary[k] = scalar_json(v);
  j["summary"] = summary;
  j["verdicts"] = json::array();
  for (const auto& v : r.verdicts) j["verdicts"].push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  std::size_t failing = 0;
  for (const auto& b : r.bounds) failing += !b.report.pass;
  j["bounds"] = {{"rows", r.bounds.size()}, {"failing", failing}, {"file", "bounds.csv"}};
  json fail = json::array();
  for (const auto& f : r.failures()) fail.push_back(f);
  j["failures"] = fail;
  j["passed"] = r.passed();
  if (include_run) {
    j["run"] = {{"threads", r.config.threads}, {"out", r.config.out_dir}, {"wall_seconds", r.wall_seconds}};
  }
  return j.dump(2) + "\n";
}

std::string ledgers_csv(const ExperimentReport& r) {
  std::string out = "t,metric,predictor,value,stderr,exact,case\n";
  for (const auto& l : r.ledgers) {
    out += std::to_string(l.t) + "," + l.metric + "," + l.predictor + "," + format_double(l.value.value) + "," +
           (std::isnan(l.value.std_error) ? "" : format_double(l.value.std_error)) + "," +
           (l.value.exact ? to_string(*l.value.exact) : "") + "," + csv_quote(l.case_id) + "\n";
  }
  return out;
}

std::string bounds_csv(const ExperimentReport& r) {
  std::string out =
      "predictor,metric,bound,measured,slack,pass,bound_name,bound_exact,measured_exact,slack_exact,stderr,case\n";
  for (const auto& row : r.bounds) {
    const auto& b = row.report;
    out += b.predictor + "," + b.metric + "," + format_double(b.bound) + "," + format_double(b.measured) + "," +
           format_double(b.slack) + "," + (b.pass ? "pass" : "fail") + "," + csv_quote(b.bound_name) + "," +
           (b.bound_exact ? to_string(*b.bound_exact) : "") + "," +
           (b.measured_exact ? to_string(*b.measured_exact) : "") + "," +
           (b.slack_exact ? to_string(*b.slack_exact) : "") + "," +
           (std::isnan(b.measured_stderr) ? "" : format_double(b.measured_stderr)) + "," + csv_quote(row.case_id) +
           "\n";
  }
  return out;
}

std::string series_tsv(const Series& s) {
  std::string out;
  for (std::size_t i = 0; i < s.columns.size(); ++i) out += (i ? "\t" : "") + s.columns[i];
  out += "\n";
  for (const auto& row : s.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "\t" : "") + format_double(row[i]);
    out += "\n";
  }
  return out;
}

void write_report(const ExperimentReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "plotdata");
  auto put = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw Error("cannot write " + p.string());
    f << text;
  };
  put(dir / "report.json", report_json(r));
  put(dir / "ledgers.csv", ledgers_csv(r));
  put(dir / "bounds.csv", bounds_csv(r));
  for (const auto& s : r.plots) put(dir / "plotdata" / (s.name + ".tsv"), series_tsv(s));
}

}  // namespace mdl
