#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfkit/invertible.hpp"

namespace pfkit {

struct RandomCYOptions {
  int min_n = 2;
  int max_n = 5;
  long max_dhat = 60;
  int max_exponent = 30;
  // Fraction of the output that is deliberately non-CY (for the dual-CY equivalence check).
  double non_cy_fraction = 0.0;
};

// Distinct (up to renaming of variables) invertible polynomials, built from random atomic
// parts. The CY ones satisfy sum q_i = d and have dual degree <= max_dhat. Deterministic in `seed`.
std::vector<ExponentMatrix> random_invertible(size_t count, uint64_t seed, const RandomCYOptions& opts = {});

struct PropertyFailure {
  std::string property;
  std::string detail;
};

// Structural identities that must hold for every CY invertible polynomial. For a non-CY
// input only the transpose and CY-equivalence properties are checked.
std::vector<PropertyFailure> check_properties(const ExponentMatrix& m);

struct SweepResult {
  size_t instances = 0;
  size_t calabi_yau = 0;
  std::vector<std::pair<size_t, PropertyFailure>> failures;  // (instance index, failure), sorted
};

SweepResult property_sweep_serial(const std::vector<ExponentMatrix>& ms);
SweepResult property_sweep_parallel(const std::vector<ExponentMatrix>& ms);

}  // namespace pfkit
