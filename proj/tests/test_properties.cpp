#include <gtest/gtest.h>

#include <map>
#include <set>

#include "pfkit/properties.hpp"

using namespace pfkit;

namespace {

std::string summarize(const SweepResult& r, const std::vector<ExponentMatrix>& ms) {
  std::string out;
  std::map<std::string, int> counts;
  for (const auto& [i, f] : r.failures) {
    if (counts[f.property]++ < 3) out += f.property + " on " + render_polynomial(ms[i]) + " " + f.detail + "\n";
  }
  return out;
}

}  // namespace

TEST(PropertySweep, ThousandCalabiYauInstances) {
  RandomCYOptions o;
  o.non_cy_fraction = 0.1;
  const auto ms = random_invertible(1200, 2024, o);
  const SweepResult r = property_sweep_serial(ms);
  EXPECT_EQ(r.instances, 1200u);
  EXPECT_GE(r.calabi_yau, 1000u);
  EXPECT_TRUE(r.failures.empty()) << summarize(r, ms);
}

TEST(PropertySweep, ParallelMatchesSerial) {
  const auto ms = random_invertible(300, 99);
  const SweepResult a = property_sweep_serial(ms);
  const SweepResult b = property_sweep_parallel(ms);
  EXPECT_EQ(a.instances, b.instances);
  EXPECT_EQ(a.calabi_yau, b.calabi_yau);
  EXPECT_EQ(a.failures.size(), b.failures.size());
}

TEST(PropertySweep, GeneratorIsDeterministicAndDistinct) {
  const auto a = random_invertible(200, 7);
  const auto b = random_invertible(200, 7);
  EXPECT_EQ(a, b);
  std::set<std::vector<std::pair<int, std::vector<int>>>> sigs;
  for (const auto& m : a) {
    EXPECT_TRUE(sigs.insert(canonical_signature(m)).second);
    EXPECT_TRUE(is_calabi_yau(weights(m)));
    EXPECT_LE(weights(transpose(m)).d, 60);
    EXPECT_GE(m.n(), 2);
    EXPECT_LE(m.n(), 5);
  }
  EXPECT_NE(random_invertible(50, 8), std::vector<ExponentMatrix>(a.begin(), a.begin() + 50));
}

TEST(PropertySweep, NonCalabiYauInstancesAreMarked) {
  RandomCYOptions o;
  o.non_cy_fraction = 0.5;
  const auto ms = random_invertible(100, 3, o);
  size_t cy = 0;
  for (const auto& m : ms) cy += is_calabi_yau(weights(m));
  EXPECT_EQ(cy, 50u);
  EXPECT_EQ(property_sweep_serial(ms).calabi_yau, 50u);
}

TEST(PropertySweep, NonCalabiYauAndInvalidInput) {
  // Not Calabi-Yau: only the transpose checks apply and they hold.
  EXPECT_TRUE(check_properties(parse_polynomial("x1^7+x2^3+x3^2").matrix).empty());
  // A matrix that is not of invertible type never reaches the checker.
  EXPECT_THROW(ExponentMatrix({{2, 2}, {4, 2}}), NotInvertible);
}
