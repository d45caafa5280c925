#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flv/basin.hpp"
#include "flv/lotka.hpp"
#include "flv/rational.hpp"
#include "flv/solver.hpp"

namespace flv::cli {

/// Malformed or inconsistent configuration. The message names the field and,
/// when known, the line in the config file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One monomial coeff * prod_k y_k^powers[k] of a polynomial right-hand side.
struct Monomial {
  double coeff = 0.0;
  std::vector<int> powers;
};

struct GenericModel {
  /// rhs[i] is the sum of the monomials of component i.
  std::vector<std::vector<Monomial>> rhs;
  /// Points the basin classifier and stability report refer to.
  std::vector<State> equilibria;

  [[nodiscard]] std::size_t dimension() const { return rhs.size(); }
  void evaluate(std::span<const double> y, std::span<double> dy) const;
};

enum class ModelKind { Lotka, Generic };

struct ScanSpec {
  std::string name;
  std::vector<RationalOrder> orders;
};

struct RunConfig {
  std::string source;  // config path, for messages
  ModelKind model = ModelKind::Lotka;
  lotka::Params params;
  GenericModel generic;
  std::vector<RationalOrder> orders;

  std::vector<double> y0;
  lotka::Point slope0{0.0, 0.0};  // initial y1', y2' for orders in (1, 2)
  std::vector<std::vector<double>> starts;  // portrait starting points
  double t_end = 40.0;
  double h = 0.05;
  double escape = 1e4;

  basin::GridSpec grid;
  basin::ClassifierConfig classifier;
  int target = 0;  // equilibrium whose basin boundary is extracted
  std::vector<ScanSpec> scans;  // extra basin scans sharing the grid

  double sep_budget = 20.0;
  double sep_step = 1e-3;
  std::optional<lotka::Box> sep_window = lotka::Box{-4, 4, -4, 4};

  std::string name = "run";

  /// Lotka system with the configured orders (exactly two required).
  [[nodiscard]] lotka::System lotka_system() const;
};

/// `key.path=value` assignment applied on top of the file contents.
struct Override {
  std::string key;
  std::string value;
};

[[nodiscard]] Override parse_override(const std::string& text);

/// Parses YAML text. `source` is used in error messages only.
[[nodiscard]] RunConfig parse_config(const std::string& text, const std::string& source,
                                     const std::vector<Override>& overrides = {});

/// Reads and parses a config file. Throws ConfigError on any problem.
[[nodiscard]] RunConfig load_config(const std::string& path, const std::vector<Override>& overrides = {});

}  // namespace flv::cli
