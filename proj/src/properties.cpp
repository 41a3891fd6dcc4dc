#include "mdl/properties.hpp"

#include <cmath>

#include "mdl/metrics.hpp"
#include "mdl/random.hpp"
#include "mdl/random_class.hpp"

namespace mdl {

std::uint64_t PropertySuite::violations() const {
  std::uint64_t n = 0;
  for (const auto& c : checks) n += c.violations;
  return n;
}

PropertyCount& PropertySuite::entry(const std::string& name) {
  for (auto& c : checks) {
    if (c.name == name) return c;
  }
  PropertyCount c;
  c.name = name;
  checks.push_back(c);
  return checks.back();
}

void PropertySuite::merge(const PropertySuite& other) {
  for (const auto& c : other.checks) {
    auto& e = entry(c.name);
    e.checked += c.checked;
    e.violations += c.violations;
    if (!e.witness && c.witness) e.witness = c.witness;
  }
}

namespace {

void record(PropertySuite& s, const std::string& name, bool ok, const std::string& where) {
  auto& e = s.entry(name);
  ++e.checked;
  if (!ok) {
    ++e.violations;
    if (!e.witness) e.witness = where;
  }
}

bool kl_dominates(double small, double kl) { return small <= kl * (1 + kKlRelativeTolerance); }

void distance_checks(PropertySuite& s, const std::string& tag, const StepDistances& d, const std::string& where) {
  record(s, "square_le_kl/" + tag, kl_dominates(d.square, d.kl), where);
  record(s, "hellinger_le_kl/" + tag, kl_dominates(d.hellinger, d.kl), where);
  record(s, "hellinger_le_absolute/" + tag, d.hellinger <= d.absolute * (1 + kKlRelativeTolerance), where);
}

// Heap layout: node id of string b (length L) is 2^L - 1 + b.
std::string node_string(std::size_t id) {
  std::string out;
  while (id > 0) {
    out.push_back((id - 1) % 2 ? '1' : '0');
    id = (id - 1) / 2;
  }
  return std::string(out.rbegin(), out.rend());
}

PropertySuite one_class(const WeightedClass& c, std::size_t depth) {
  PropertySuite s;
  const std::size_t n = c.size();
  const std::size_t nodes = (std::size_t{2} << depth) - 1;  // lengths 0..depth
  std::vector<std::vector<Rational>> mass(nodes, std::vector<Rational>(n));
  {
    struct Item {
      std::size_t id;
      std::vector<std::shared_ptr<Cursor>> cursors;
    };
    std::vector<Item> stack;
    Item root{0, {}};
    for (std::size_t i = 0; i < n; ++i) {
      root.cursors.push_back(c.model(i).start());
      mass[0][i] = c.model(i).empty_mass();
    }
    stack.push_back(std::move(root));
    while (!stack.empty()) {
      Item it = std::move(stack.back());
      stack.pop_back();
      if (2 * it.id + 1 >= nodes) continue;
      for (Symbol a = 0; a < 2; ++a) {
        Item child{2 * it.id + 1 + a, {}};
        for (std::size_t i = 0; i < n; ++i) {
          mass[child.id][i] = mass[it.id][i] * it.cursors[i]->conditional(a);
          std::shared_ptr<Cursor> cur = it.cursors[i]->clone();
          cur->advance(a);
          child.cursors.push_back(std::move(cur));
        }
        stack.push_back(std::move(child));
      }
    }
  }
  std::vector<Rational> xi(nodes), rho(nodes);
  std::vector<std::size_t> chooser(nodes);
  for (std::size_t id = 0; id < nodes; ++id) {
    std::vector<Value> masses(mass[id].begin(), mass[id].end());
    std::size_t len = node_string(id).size();
    auto r = map_from_masses(c, masses, len, TieBreak{});
    chooser[id] = r.index;
    rho[id] = r.value.rational();
    xi[id] = 0;
    for (std::size_t i = 0; i < n; ++i) xi[id] += c.weight(i) * mass[id][i];
  }
  const bool measures = c.all_measures();
  const std::size_t inner = (std::size_t{1} << depth) - 1;  // l(x) < depth
  const std::size_t mu = c.require_true_index();
  for (std::size_t id = 0; id < inner; ++id) {
    const std::string where = "x=" + node_string(id);
    const std::size_t c0 = 2 * id + 1, c1 = 2 * id + 2;
    Rational gap = xi[id] - rho[id];
    Rational child_gap = xi[c0] - rho[c0] + xi[c1] - rho[c1];
    record(s, "xi_minus_rho_semimeasure", gap >= child_gap && sgn(child_gap) >= 0, where);
    const std::size_t v = chooser[id];
    Rational static_gap = xi[c0] + xi[c1] - c.weight(v) * (mass[c0][v] + mass[c1][v]);
    record(s, "xi_minus_rho_static_semimeasure", gap >= static_gap && sgn(static_gap) >= 0, where);
    if (measures) record(s, "rho_anti_semimeasure", rho[id] <= rho[c0] + rho[c1], where);

    if (sgn(mass[id][mu]) > 0) {
      auto ratio = [](const Rational& a, const Rational& b) { return Value(Rational(a / b)); };
      std::vector<Value> p{ratio(mass[c0][mu], mass[id][mu]), ratio(mass[c1][mu], mass[id][mu])};
      std::vector<Value> q_xi{ratio(xi[c0], xi[id]), ratio(xi[c1], xi[id])};
      Rational z = rho[c0] + rho[c1];
      distance_checks(s, "xi", step_distances(p, q_xi), where);
      if (sgn(z) > 0) {
        std::vector<Value> q_rho{ratio(rho[c0], z), ratio(rho[c1], z)};
        distance_checks(s, "rho_norm", step_distances(p, q_rho), where);
      }
    }
  }
  // the chain over every pair of strings with length < depth
  auto& chain = s.entry("xi_ge_rho_ge_rho_y");
  for (std::size_t x = 0; x < inner; ++x) {
    bool ok = xi[x] >= rho[x];
    for (std::size_t y = 0; y < inner && ok; ++y) {
      const std::size_t v = chooser[y];
      ok = rho[x] >= c.weight(v) * mass[x][v];
      if (!ok && !chain.witness) chain.witness = "x=" + node_string(x) + " y=" + node_string(y);
    }
    chain.checked += inner;
    if (!ok) {
      ++chain.violations;
      if (!chain.witness) chain.witness = "x=" + node_string(x);
    }
  }
  return s;
}

}  // namespace

PropertySuite lemma_tree_suite(std::size_t classes, std::size_t depth, std::uint64_t seed, std::size_t threads) {
  std::vector<PropertySuite> parts(classes);
  parallel_for(classes, threads, [&](std::size_t j) {
    RandomClassOptions opt;
    opt.leaky_probability = j % 2 ? 0.4 : 0.0;
    parts[j] = one_class(random_class(derive_seed(seed, j), opt), depth);
    for (auto& c : parts[j].checks) {
      if (c.witness) c.witness = "class " + std::to_string(j) + " " + *c.witness;
    }
  });
  PropertySuite out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

PropertySuite distance_pair_suite(std::size_t pairs, std::uint64_t seed) {
  PropertySuite s;
  Rng rng(derive_seed(seed, 0xd157));
  for (std::size_t j = 0; j < pairs; ++j) {
    const auto k = static_cast<std::size_t>(rng.uniform_int(2, 4));
    auto draw = [&] {
      std::vector<double> v(k);
      double total = 0;
      for (auto& e : v) {
        e = rng.bernoulli(0.1) ? 0.0 : -std::log(1 - rng.uniform());
        total += e;
      }
      if (total == 0) {
        v[0] = 1;
        total = 1;
      }
      for (auto& e : v) e /= total;
      return v;
    };
    auto p = draw();
    auto q = draw();
    auto d = step_distances(p, q);
    const std::string where = "pair " + std::to_string(j);
    distance_checks(s, "pairs", d, where);
    record(s, "nonnegative/pairs", d.square >= 0 && d.hellinger >= 0 && d.kl >= 0 && d.absolute >= 0, where);
  }
  return s;
}

}  // namespace mdl
