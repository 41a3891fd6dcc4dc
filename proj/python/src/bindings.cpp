#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mdl/coding.hpp"
#include "mdl/errors.hpp"
#include "mdl/experiments.hpp"
#include "mdl/metrics.hpp"
#include "mdl/predictors.hpp"

namespace py = pybind11;
using namespace mdl;

namespace {

std::vector<Rational> rationals(const std::vector<std::string>& text) {
  std::vector<Rational> out;
  for (const auto& t : text) out.push_back(parse_rational(t));
  return out;
}

WeightedClass bernoulli_of(const std::vector<std::string>& thetas, const std::optional<std::vector<std::string>>& weights,
                           std::optional<std::size_t> true_index) {
  std::optional<std::vector<Rational>> w;
  if (weights) w = rationals(*weights);
  return bernoulli_class(rationals(thetas), w, true_index);
}

std::vector<std::string> as_text(const PredictiveDistribution& d) {
  std::vector<std::string> out;
  for (const auto& v : d.values) out.push_back(v.is_exact() ? to_string(v.rational()) : format_double(v.to_double()));
  return out;
}

std::string run(const std::string& experiment, const std::map<std::string, std::string>& params, std::uint64_t seed,
                std::optional<std::size_t> horizon, std::optional<std::size_t> samples, std::optional<std::string> mode,
                std::size_t threads, const std::optional<std::string>& config, const std::optional<std::string>& out) {
  ExperimentConfig cfg;
  if (config) cfg = parse_config(*config);
  if (!cfg.experiment.empty() && cfg.experiment != experiment) {
    throw ConfigError("config names experiment '" + cfg.experiment + "'");
  }
  cfg.experiment = experiment;
  for (const auto& [k, v] : params) cfg.params[k] = v;
  if (seed) cfg.seed = seed;
  if (horizon) cfg.horizon = horizon;
  if (samples) cfg.samples = samples;
  if (mode) cfg.mode = parse_mode(*mode);
  cfg.threads = threads;
  ExperimentReport r;
  {
    py::gil_scoped_release release;
    r = run_experiment(cfg);
  }
  if (out) {
    cfg.out_dir = *out;
    write_report(r, *out);
  }
  return report_json(r, false);
}

}  // namespace

PYBIND11_MODULE(_mdl, m) {
  m.doc() = "two-part MDL prediction laboratory";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<MalformedCode>(m, "MalformedCode", base.ptr());
  py::register_exception<TooLarge>(m, "TooLarge", base.ptr());

  m.attr("__version__") = kVersion;

  m.def("experiments", [] {
    std::vector<std::string> names;
    for (const auto& e : registry()) names.push_back(e.name);
    return names;
  });
  m.def("describe", &describe_text, py::arg("experiment"));
  m.def("run", &run, py::arg("experiment"), py::arg("params") = std::map<std::string, std::string>{},
        py::arg("seed") = 0, py::arg("horizon") = py::none(), py::arg("samples") = py::none(),
        py::arg("mode") = py::none(), py::arg("threads") = 1, py::arg("config") = py::none(),
        py::arg("out") = py::none(), "Runs an experiment and returns report.json text.");

  m.def(
      "predict",
      [](const std::vector<std::string>& thetas, const std::string& kind, const std::string& x,
         const std::optional<std::vector<std::string>>& weights, const std::string& tie_break) {
        auto c = bernoulli_of(thetas, weights, std::nullopt);
        TieBreak tb{parse_tie_policy(tie_break), 0};
        return as_text(predict(c, parse_predictor(kind), parse_sequence(x), tb));
      },
      py::arg("thetas"), py::arg("kind"), py::arg("x"), py::arg("weights") = py::none(),
      py::arg("tie_break") = "largest_weight");

  m.def(
      "map_index",
      [](const std::vector<std::string>& thetas, const std::string& x, const std::optional<std::vector<std::string>>& weights) {
        return map_estimator(bernoulli_of(thetas, weights, std::nullopt), parse_sequence(x)).index;
      },
      py::arg("thetas"), py::arg("x"), py::arg("weights") = py::none());

  m.def(
      "cumulative",
      [](const std::vector<std::string>& thetas, std::size_t true_index, std::size_t horizon, const std::string& predictor,
         const std::string& metric, const std::optional<std::vector<std::string>>& weights) {
        auto c = bernoulli_of(thetas, weights, true_index);
        auto p = parse_predictor(predictor);
        Quantity q;
        {
          py::gil_scoped_release release;
          q = cumulative_distances(c, horizon, Mode::exact, {}, {}, {p}).total(p, parse_metric(metric));
        }
        return q.exact ? to_string(*q.exact) : format_double(q.value);
      },
      py::arg("thetas"), py::arg("true_index"), py::arg("horizon"), py::arg("predictor"), py::arg("metric") = "square",
      py::arg("weights") = py::none());

  m.def(
      "encode",
      [](const std::vector<std::string>& thetas, std::size_t model, const std::string& x,
         const std::optional<std::vector<std::string>>& weights) {
        return encode(bernoulli_of(thetas, weights, std::nullopt), model, parse_sequence(x)).bits();
      },
      py::arg("thetas"), py::arg("model"), py::arg("x"), py::arg("weights") = py::none());

  m.def(
      "decode",
      [](const std::vector<std::string>& thetas, const std::string& bits,
         const std::optional<std::vector<std::string>>& weights) {
        std::size_t model = 0;
        auto x = decode(bernoulli_of(thetas, weights, std::nullopt), bits, &model);
        return py::make_tuple(model, format_sequence(x));
      },
      py::arg("thetas"), py::arg("bits"), py::arg("weights") = py::none());
}
