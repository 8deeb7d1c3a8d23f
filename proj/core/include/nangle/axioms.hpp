#pragma once

// Randomized verification of the angulation axioms (N1)-(N4) for N_u.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nangle/angulation.hpp"

namespace nangle {

struct AxiomCheck {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct Counterexample {
  std::size_t trial = 0;
  std::string check;
  std::string detail;
  nlohmann::json certificate;
};

struct AxiomSuiteOptions {
  std::size_t max_rank = 3;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct AxiomReport {
  std::string ring;
  std::size_t n = 0;
  RingElement u;
  AxiomSuiteOptions options;
  /// Set for odd n with 2p != 0, where N_u fails (N2).
  bool rejected = false;
  std::string diagnostic;
  std::optional<NSequence> parity_witness;
  std::size_t trials_passed = 0;
  std::vector<AxiomCheck> checks;
  std::vector<Counterexample> counterexamples;

  bool passed() const { return !rejected && trials_passed == options.trials && counterexamples.empty(); }
};

/// Names of the individual checks, in report order.
const std::vector<std::string>& axiom_check_names();

AxiomReport run_axiom_suite(const RingPtr& ring, std::size_t n, const RingElement& u, const AxiomSuiteOptions& opts);

nlohmann::json to_json(const AxiomReport& r);

}  // namespace nangle
