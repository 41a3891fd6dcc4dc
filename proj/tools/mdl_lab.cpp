#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mdl/coding.hpp"
#include "mdl/errors.hpp"
#include "mdl/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitTooLarge = 3;
constexpr int kExitBoundFailure = 4;

struct CodeArgs {
  std::string config;
  std::string thetas;
  std::string weights = "uniform";
  std::size_t model = 0;
  std::string x;
  std::string file;
  std::string hex;
  std::size_t bits = 0;
  std::string bitstring;
};

mdl::WeightedClass code_class(const CodeArgs& a) {
  if (!a.config.empty()) {
    auto cfg = mdl::load_config(a.config);
    if (!cfg.class_spec) throw mdl::ConfigError("config has no class section");
    return mdl::build_class(*cfg.class_spec);
  }
  if (a.thetas.empty()) throw mdl::ConfigError("give --thetas or --config with a class section");
  mdl::ClassSpec s;
  s.family = "bernoulli";
  std::stringstream ss(a.thetas);
  std::string item;
  while (std::getline(ss, item, ',')) s.thetas.push_back(mdl::parse_rational(item));
  if (a.weights.find(',') != std::string::npos || a.weights.find('/') != std::string::npos ||
      (!a.weights.empty() && std::isdigit(static_cast<unsigned char>(a.weights[0])))) {
    std::vector<mdl::Rational> w;
    std::stringstream ws(a.weights);
    while (std::getline(ws, item, ',')) w.push_back(mdl::parse_rational(item));
    s.weights = w;
  } else {
    s.weight_rule = a.weights;
  }
  return mdl::build_class(s);
}

std::string read_symbols(const CodeArgs& a) {
  if (!a.file.empty()) {
    std::ifstream in(a.file);
    if (!in) throw mdl::ConfigError("cannot read " + a.file);
    std::string text, line;
    while (std::getline(in, line)) text += line;
    std::string digits;
    for (char c : text) {
      if (!std::isspace(static_cast<unsigned char>(c))) digits.push_back(c);
    }
    return digits;
  }
  return a.x;
}

int code_encode(const CodeArgs& a) {
  auto c = code_class(a);
  if (a.model >= c.size()) throw mdl::ConfigError("--model out of range");
  const auto x = mdl::parse_sequence(read_symbols(a));
  auto code = mdl::encode(c, a.model, x);
  std::cout << "model\t" << a.model << "\t" << c.model(a.model).name() << "\n";
  std::cout << "length\t" << x.size() << "\n";
  std::cout << "bits\t" << code.total_bits() << "\n";
  std::cout << "hex\t" << mdl::bits_to_hex(code.bits()) << "\n";
  std::cout << "bitstring\t" << code.bits() << "\n";
  std::cout << "header_bits\t" << code.header.size() << "\nlength_bits\t" << code.length_field.size()
            << "\npayload_bits\t" << code.payload.size() << "\n";
  auto rep = mdl::code_length_report(c, x);
  std::cout << "\nindex\tmodel\theader\tlength\tpayload\ttotal\tceil_kw\tceil_knu\tchosen\twithin_constant\n";
  for (const auto& r : rep.rows) {
    std::cout << r.index << "\t" << r.model << "\t" << r.header_bits << "\t" << r.length_bits << "\t"
              << r.payload_bits << "\t" << r.total_bits << "\t" << r.ceil_kw << "\t" << r.ceil_knu << "\t"
              << (r.chosen ? "*" : "") << "\t" << (r.within_constant ? "yes" : "no") << "\n";
  }
  std::cout << "chosen_near_minimal\t" << (rep.chosen_near_minimal ? "yes" : "no") << "\n";
  return 0;
}

int code_decode(const CodeArgs& a) {
  auto c = code_class(a);
  mdl::Bits bits;
  if (!a.bitstring.empty()) {
    bits = a.bitstring;
  } else if (!a.hex.empty()) {
    bits = mdl::hex_to_bits(a.hex, a.bits);
  } else {
    throw mdl::ConfigError("give --hex with --bits, or --bitstring");
  }
  std::size_t model = 0;
  auto x = mdl::decode(c, bits, &model);
  std::cout << "model\t" << model << "\t" << c.model(model).name() << "\n";
  std::cout << "length\t" << x.size() << "\n";
  std::cout << "x\t" << mdl::format_sequence(x) << "\n";
  return 0;
}

int run_command(const std::string& experiment, const std::string& config_file, const mdl::ExperimentConfig& flags,
                const std::vector<std::string>& params, bool quiet) {
  mdl::ExperimentConfig cfg;
  if (!config_file.empty()) cfg = mdl::load_config(config_file);
  if (!cfg.experiment.empty() && cfg.experiment != experiment) {
    throw mdl::ConfigError("config names experiment '" + cfg.experiment + "' but '" + experiment + "' was requested");
  }
  cfg.experiment = experiment;
  mdl::find_experiment(experiment);
  if (flags.horizon) cfg.horizon = flags.horizon;
  if (flags.samples) cfg.samples = flags.samples;
  if (flags.mode) cfg.mode = flags.mode;
  if (flags.tie_break) cfg.tie_break = flags.tie_break;
  if (flags.seed != 0 || cfg.seed == 0) cfg.seed = flags.seed ? flags.seed : cfg.seed;
  if (flags.threads != 0) cfg.threads = flags.threads;
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (cfg.out_dir.empty()) cfg.out_dir = "results/" + experiment;
  for (const auto& p : params) mdl::apply_param(cfg, p);

  auto report = mdl::run_experiment(cfg);
  mdl::write_report(report, cfg.out_dir);
  if (!quiet) {
    std::cout << experiment << ": " << (report.passed() ? "pass" : "FAIL") << " (" << report.bounds.size()
              << " bound rows, " << report.verdicts.size() << " verdicts, " << mdl::format_double(report.wall_seconds)
              << " s) -> " << cfg.out_dir << "\n";
    for (const auto& [k, v] : report.summary) {
      std::cout << "  " << k << " = "
                << std::visit(
                       [](const auto& s) -> std::string {
                         using T = std::decay_t<decltype(s)>;
                         if constexpr (std::is_same_v<T, bool>) return s ? "true" : "false";
                         else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(s);
                         else if constexpr (std::is_same_v<T, double>) return mdl::format_double(s);
                         else if constexpr (std::is_same_v<T, std::string>) return s;
                         else return mdl::to_string(s);
                       },
                       v)
                << "\n";
    }
  }
  if (!report.passed()) {
    for (const auto& f : report.failures()) std::cerr << "failing: " << f << "\n";
    return kExitBoundFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-part MDL prediction laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mdl::kVersion);

  auto* run = app.add_subcommand("run", "run a registered experiment");
  std::string experiment, config_file, mode_text, tie_text;
  std::vector<std::string> params;
  mdl::ExperimentConfig flags;
  flags.threads = 0;
  std::size_t horizon = 0, samples = 0;
  bool quiet = false;
  run->add_option("experiment", experiment, "experiment name (see list)")->required();
  run->add_option("--config", config_file, "JSON config file");
  run->add_option("--seed", flags.seed, "base seed");
  auto* h_opt = run->add_option("--horizon", horizon, "horizon n");
  auto* s_opt = run->add_option("--samples", samples, "Monte Carlo samples");
  run->add_option("--mode", mode_text, "exact|float")->check(CLI::IsMember({"exact", "float"}));
  run->add_option("--out", flags.out_dir, "output directory");
  run->add_option("--param", params, "experiment parameter k=v")->allow_extra_args(false);
  run->add_option("--threads", flags.threads, "worker threads");
  run->add_option("--tie-break", tie_text, "largest_weight|lowest_index|round_robin");
  run->add_flag("--quiet", quiet, "print nothing on success");

  app.add_subcommand("list", "list registered experiments");
  auto* describe = app.add_subcommand("describe", "describe one experiment");
  std::string describe_name;
  describe->add_option("experiment", describe_name)->required();

  auto* code = app.add_subcommand("code", "two-part code of a symbol string");
  code->require_subcommand(1);
  CodeArgs ca;
  auto add_class_opts = [&](CLI::App* sub) {
    sub->add_option("--config", ca.config, "JSON file with a class section");
    sub->add_option("--thetas", ca.thetas, "Bernoulli parameters, comma separated");
    sub->add_option("--weights", ca.weights, "uniform, geometric(r) or a comma separated list");
  };
  auto* enc = code->add_subcommand("encode", "encode digits under one class member");
  add_class_opts(enc);
  enc->add_option("--model", ca.model, "class index used for the payload");
  enc->add_option("--x", ca.x, "symbols as ASCII digits");
  enc->add_option("--file", ca.file, "file holding the digits");
  auto* dec = code->add_subcommand("decode", "decode a code back to digits");
  add_class_opts(dec);
  dec->add_option("--hex", ca.hex, "code as hex");
  dec->add_option("--bits", ca.bits, "number of meaningful bits in --hex");
  dec->add_option("--bitstring", ca.bitstring, "code as a 0/1 string");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      if (h_opt->count()) flags.horizon = horizon;
      if (s_opt->count()) flags.samples = samples;
      if (!mode_text.empty()) flags.mode = mdl::parse_mode(mode_text);
      if (!tie_text.empty()) flags.tie_break = mdl::TieBreak{mdl::parse_tie_policy(tie_text), 0};
      return run_command(experiment, config_file, flags, params, quiet);
    }
    if (app.got_subcommand("list")) {
      std::cout << mdl::list_text();
      return 0;
    }
    if (describe->parsed()) {
      std::cout << mdl::describe_text(describe_name);
      return 0;
    }
    if (enc->parsed()) return code_encode(ca);
    if (dec->parsed()) return code_decode(ca);
  } catch (const mdl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mdl::MalformedCode& e) {
    std::cerr << "malformed code: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mdl::TooLarge& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
