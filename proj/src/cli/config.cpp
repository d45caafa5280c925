#include "flv/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "flv/errors.hpp"

namespace flv::cli {

void GenericModel::evaluate(std::span<const double> y, std::span<double> dy) const {
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    double sum = 0.0;
    for (const Monomial& m : rhs[i]) {
      double term = m.coeff;
      for (std::size_t k = 0; k < m.powers.size(); ++k) {
        if (m.powers[k] != 0) term *= std::pow(y[k], m.powers[k]);
      }
      sum += term;
    }
    dy[i] = sum;
  }
}

lotka::System RunConfig::lotka_system() const {
  if (orders.size() != 2) {
    throw ConfigError(source + ": the lotka model needs exactly two orders");
  }
  return {params, orders[0], orders[1]};
}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) const {
    std::ostringstream msg;
    msg << source_;
    if (node.IsDefined() && node.Mark().line >= 0) msg << ":" << node.Mark().line + 1;
    msg << ": " << field << ": " << what;
    throw ConfigError(msg.str());
  }

  double number(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a number");
    try {
      const double v = node.as<double>();
      if (!std::isfinite(v)) fail(node, field, "must be finite");
      return v;
    } catch (const YAML::Exception&) {
      fail(node, field, "expected a number, got '" + node.Scalar() + "'");
    }
  }

  double positive(const YAML::Node& node, const std::string& field) const {
    const double v = number(node, field);
    if (!(v > 0.0)) fail(node, field, "must be positive");
    return v;
  }

  int integer(const YAML::Node& node, const std::string& field) const {
    const double v = number(node, field);
    if (v != std::floor(v) || std::abs(v) > 1e9) fail(node, field, "expected an integer");
    return static_cast<int>(v);
  }

  std::string text(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a string");
    return node.Scalar();
  }

  RationalOrder order(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected an order such as 9/10 or 0.9");
    try {
      return parse_order(node.Scalar());
    } catch (const std::exception& e) {
      fail(node, field, e.what());
    }
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < node.size(); ++k) {
      out.push_back(number(node[k], field + "[" + std::to_string(k) + "]"));
    }
    return out;
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& field, std::size_t n) const {
    auto v = numbers(node, field);
    if (v.size() != n) fail(node, field, "expected " + std::to_string(n) + " values");
    return v;
  }

  std::vector<RationalOrder> orders(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence() || node.size() == 0) fail(node, field, "expected a list of orders");
    std::vector<RationalOrder> out;
    for (std::size_t k = 0; k < node.size(); ++k) {
      out.push_back(order(node[k], field + "[" + std::to_string(k) + "]"));
    }
    return out;
  }

  void only_keys(const YAML::Node& node, const std::string& field, std::initializer_list<const char*> keys) const {
    if (!node.IsMap()) fail(node, field.empty() ? "config" : field, "expected a mapping");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        fail(kv.first, field.empty() ? key : field + "." + key, "unknown key");
      }
    }
  }

 private:
  std::string source_;
};

void apply_override(YAML::Node root, const Override& o) {
  std::vector<std::string> parts;
  std::stringstream ss(o.key);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) throw ConfigError("override '" + o.key + "': empty path component");
    parts.push_back(part);
  }
  if (parts.empty()) throw ConfigError("override: empty key");
  YAML::Node value;
  try {
    value = YAML::Load(o.value);
  } catch (const YAML::Exception& e) {
    throw ConfigError("override '" + o.key + "': " + e.msg);
  }
  // Walk by reassigning handles; yaml-cpp nodes are references into the tree.
  std::vector<YAML::Node> chain{root};
  for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
    YAML::Node next = chain.back()[parts[k]];
    if (!next.IsDefined() || next.IsNull()) {
      chain.back()[parts[k]] = YAML::Node(YAML::NodeType::Map);
      next = chain.back()[parts[k]];
    }
    if (!next.IsMap()) throw ConfigError("override '" + o.key + "': '" + parts[k] + "' is not a section");
    chain.push_back(next);
  }
  chain.back()[parts.back()] = value;
}

Monomial read_monomial(const Reader& r, const YAML::Node& node, const std::string& field, std::size_t dim) {
  Monomial m;
  if (node.IsSequence()) {
    // [coeff, p1, ..., pn]
    if (node.size() != dim + 1) r.fail(node, field, "expected [coeff, " + std::to_string(dim) + " powers]");
    m.coeff = r.number(node[0], field + ".coeff");
    for (std::size_t k = 1; k <= dim; ++k) m.powers.push_back(r.integer(node[k], field + ".powers"));
  } else {
    r.only_keys(node, field, {"coeff", "powers"});
    m.coeff = r.number(node["coeff"], field + ".coeff");
    const YAML::Node p = node["powers"];
    if (!p.IsSequence() || p.size() != dim) r.fail(p, field + ".powers", "expected " + std::to_string(dim) + " powers");
    for (std::size_t k = 0; k < dim; ++k) m.powers.push_back(r.integer(p[k], field + ".powers"));
  }
  for (int e : m.powers) {
    if (e < 0) r.fail(node, field + ".powers", "powers must be non-negative");
  }
  return m;
}

}  // namespace

Override parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + text + "': expected key=value");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

RunConfig parse_config(const std::string& text, const std::string& source, const std::vector<Override>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  for (const Override& o : overrides) apply_override(root, o);

  const Reader r(source);
  r.only_keys(root, "", {"model", "name", "params", "orders", "alpha", "beta", "rhs", "equilibria", "y0",
                         "slope0", "starts", "t_end", "h", "escape", "grid", "classifier", "target", "scans",
                         "separatrix"});
  RunConfig cfg;
  cfg.source = source;

  if (root["name"]) cfg.name = r.text(root["name"], "name");
  if (cfg.name.empty() || cfg.name.find('/') != std::string::npos) {
    r.fail(root["name"], "name", "must be a plain file stem");
  }
  const std::string model = root["model"] ? r.text(root["model"], "model") : "lotka";
  if (model == "lotka") {
    cfg.model = ModelKind::Lotka;
  } else if (model == "generic") {
    cfg.model = ModelKind::Generic;
  } else {
    r.fail(root["model"], "model", "expected 'lotka' or 'generic'");
  }

  if (root["orders"]) {
    if (root["alpha"] || root["beta"]) r.fail(root["orders"], "orders", "give either orders or alpha/beta");
    cfg.orders = r.orders(root["orders"], "orders");
  } else if (root["alpha"] || root["beta"]) {
    if (!root["alpha"] || !root["beta"]) r.fail(root, "alpha/beta", "both alpha and beta are required");
    cfg.orders = {r.order(root["alpha"], "alpha"), r.order(root["beta"], "beta")};
  } else if (cfg.model == ModelKind::Lotka) {
    cfg.orders = {RationalOrder{1, 1}, RationalOrder{1, 1}};
  } else {
    r.fail(root, "orders", "missing");
  }
  for (const auto& o : cfg.orders) {
    if (!(o.value() > 0.0 && o.value() < 2.0)) r.fail(root["orders"], "orders", "each order must lie in (0, 2)");
  }

  std::size_t dim = 2;
  if (cfg.model == ModelKind::Lotka) {
    if (root["rhs"]) r.fail(root["rhs"], "rhs", "only allowed for the generic model");
    if (cfg.orders.size() != 2) r.fail(root["orders"], "orders", "the lotka model needs two orders");
    const YAML::Node p = root["params"];
    if (p) {
      r.only_keys(p, "params", {"a", "b", "c"});
      if (p["a"]) cfg.params.a = r.number(p["a"], "params.a");
      if (p["b"]) cfg.params.b = r.number(p["b"], "params.b");
      if (p["c"]) cfg.params.c = r.number(p["c"], "params.c");
    }
    if (cfg.params.b == 0.0) r.fail(p ? p["b"] : root, "params.b", "must be nonzero");
  } else {
    if (root["params"]) r.fail(root["params"], "params", "only allowed for the lotka model");
    const YAML::Node rhs = root["rhs"];
    if (!rhs || !rhs.IsSequence() || rhs.size() == 0) r.fail(rhs ? rhs : root, "rhs", "expected one monomial list per component");
    dim = rhs.size();
    if (cfg.orders.size() != dim) r.fail(root["orders"], "orders", "expected " + std::to_string(dim) + " orders, one per rhs component");
    for (const auto& o : cfg.orders) {
      if (o.value() > 1.0) r.fail(root["orders"], "orders", "generic models need orders in (0, 1]");
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const std::string f = "rhs[" + std::to_string(i) + "]";
      if (!rhs[i].IsSequence()) r.fail(rhs[i], f, "expected a list of monomials");
      std::vector<Monomial> comp;
      for (std::size_t k = 0; k < rhs[i].size(); ++k) {
        comp.push_back(read_monomial(r, rhs[i][k], f + "[" + std::to_string(k) + "]", dim));
      }
      cfg.generic.rhs.push_back(std::move(comp));
    }
    if (root["equilibria"]) {
      const YAML::Node eq = root["equilibria"];
      if (!eq.IsSequence()) r.fail(eq, "equilibria", "expected a list of points");
      for (std::size_t k = 0; k < eq.size(); ++k) {
        cfg.generic.equilibria.push_back(r.numbers(eq[k], "equilibria[" + std::to_string(k) + "]", dim));
      }
    }
  }

  if (root["y0"]) {
    const std::size_t want = (cfg.model == ModelKind::Lotka) ? 2 : dim;
    cfg.y0 = r.numbers(root["y0"], "y0", want);
  }
  if (root["slope0"]) {
    const auto s = r.numbers(root["slope0"], "slope0", 2);
    cfg.slope0 = {s[0], s[1]};
  }
  if (root["starts"]) {
    const YAML::Node s = root["starts"];
    if (!s.IsSequence()) r.fail(s, "starts", "expected a list of points");
    const std::size_t want = (cfg.model == ModelKind::Lotka) ? 2 : dim;
    for (std::size_t k = 0; k < s.size(); ++k) {
      cfg.starts.push_back(r.numbers(s[k], "starts[" + std::to_string(k) + "]", want));
    }
  }
  if (root["t_end"]) cfg.t_end = r.positive(root["t_end"], "t_end");
  if (root["h"]) cfg.h = r.positive(root["h"], "h");
  if (cfg.h > cfg.t_end) r.fail(root["h"] ? root["h"] : root, "h", "step exceeds t_end");
  if (root["escape"]) cfg.escape = r.positive(root["escape"], "escape");

  if (const YAML::Node g = root["grid"]) {
    r.only_keys(g, "grid", {"y1", "y2", "n1", "n2", "n"});
    if (g["y1"]) {
      const auto v = r.numbers(g["y1"], "grid.y1", 2);
      cfg.grid.y1_lo = v[0];
      cfg.grid.y1_hi = v[1];
    }
    if (g["y2"]) {
      const auto v = r.numbers(g["y2"], "grid.y2", 2);
      cfg.grid.y2_lo = v[0];
      cfg.grid.y2_hi = v[1];
    }
    if (g["n"]) cfg.grid.n1 = cfg.grid.n2 = static_cast<std::size_t>(std::max(0, r.integer(g["n"], "grid.n")));
    if (g["n1"]) cfg.grid.n1 = static_cast<std::size_t>(std::max(0, r.integer(g["n1"], "grid.n1")));
    if (g["n2"]) cfg.grid.n2 = static_cast<std::size_t>(std::max(0, r.integer(g["n2"], "grid.n2")));
    try {
      basin::validate(cfg.grid);
    } catch (const InputError& e) {
      r.fail(g, "grid", e.what());
    }
  }
  if (const YAML::Node c = root["classifier"]) {
    r.only_keys(c, "classifier", {"epsilon", "window"});
    if (c["epsilon"]) cfg.classifier.epsilon = r.positive(c["epsilon"], "classifier.epsilon");
    if (c["window"]) {
      cfg.classifier.window_fraction = r.positive(c["window"], "classifier.window");
      if (cfg.classifier.window_fraction >= 1.0) r.fail(c["window"], "classifier.window", "must be below 1");
    }
  }
  if (root["target"]) cfg.target = r.integer(root["target"], "target");
  if (const YAML::Node s = root["scans"]) {
    if (!s.IsSequence()) r.fail(s, "scans", "expected a list of {name, orders}");
    for (std::size_t k = 0; k < s.size(); ++k) {
      const std::string f = "scans[" + std::to_string(k) + "]";
      r.only_keys(s[k], f, {"name", "orders"});
      ScanSpec spec;
      spec.name = s[k]["name"] ? r.text(s[k]["name"], f + ".name") : cfg.name + "_" + std::to_string(k);
      spec.orders = r.orders(s[k]["orders"], f + ".orders");
      if (spec.orders.size() != cfg.orders.size()) r.fail(s[k]["orders"], f + ".orders", "order count differs from the model");
      cfg.scans.push_back(spec);
    }
  }
  if (const YAML::Node s = root["separatrix"]) {
    r.only_keys(s, "separatrix", {"budget", "step", "window"});
    if (s["budget"]) {
      cfg.sep_budget = r.number(s["budget"], "separatrix.budget");
      if (cfg.sep_budget < 0) r.fail(s["budget"], "separatrix.budget", "must be non-negative");
    }
    if (s["step"]) cfg.sep_step = r.positive(s["step"], "separatrix.step");
    if (s["window"]) {
      if (s["window"].IsScalar() && s["window"].Scalar() == "none") {
        cfg.sep_window.reset();
      } else {
        const auto w = r.numbers(s["window"], "separatrix.window", 4);
        if (!(w[0] < w[1] && w[2] < w[3])) r.fail(s["window"], "separatrix.window", "expected [y1_lo, y1_hi, y2_lo, y2_hi]");
        cfg.sep_window = lotka::Box{w[0], w[1], w[2], w[3]};
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<Override>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path, overrides);
}

}  // namespace flv::cli
