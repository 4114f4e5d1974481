#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "latcub/cbc.hpp"

using namespace latcub;

namespace {

constexpr double kPi = 3.14159265358979323846;

double b2(double x) { return x * x - x + 1.0 / 6.0; }

// literal transcription of the criterion, kept independent of the library path
double p2_direct(const IntVec& g, Index n, const Eigen::ArrayXd& gamma) {
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    double prod = 1.0;
    for (int j = 0; j < g.size(); ++j) {
      double frac = std::fmod(static_cast<double>(i) * static_cast<double>(g[j]) / static_cast<double>(n), 1.0);
      prod *= 1.0 + gamma[j] * 2.0 * kPi * kPi * b2(frac);
    }
    total += prod;
  }
  return total / static_cast<double>(n) - 1.0;
}

}  // namespace

TEST_CASE("criterion value of the trivial rule") {
  // n = 1, g = (0): the only node is the origin, B2(0) = 1/6
  IntVec g(1);
  g << 0;
  WeightSpec w;
  w.gamma = Eigen::ArrayXd::Ones(1);
  CHECK(p2_criterion(g, 1, w) == doctest::Approx(2.0 * kPi * kPi / 6.0).epsilon(1e-14));
}

TEST_CASE("criterion matches the direct transcription") {
  WeightSpec w = WeightSpec::power_weights(3);
  IntVec g(3);
  g << 1, 5, 11;
  for (Index n : {4, 16, 64}) {
    CHECK(p2_criterion(g, n, w) == doctest::Approx(p2_direct(g, n, w.gamma)).epsilon(1e-13));
  }
}

TEST_CASE("power weights decay as promised") {
  WeightSpec w = WeightSpec::power_weights(4);
  REQUIRE(w.gamma.size() == 4);
  CHECK(w.gamma[0] == doctest::Approx(1.0));
  CHECK(w.gamma[1] == doctest::Approx(0.25));
  CHECK(w.gamma[3] == doctest::Approx(1.0 / 16.0));
}

TEST_CASE("criterion is invariant under g -> n - g") {
  WeightSpec w = WeightSpec::power_weights(2);
  const Index n = 16;
  for (std::int64_t a : {1, 3, 5, 7}) {
    IntVec g(2), gr(2);
    g << 1, a;
    gr << 1, n - a;
    CHECK(p2_criterion(g, n, w) == doctest::Approx(p2_criterion(gr, n, w)).epsilon(1e-13));
  }
}

TEST_CASE("one-dimensional construction fixes g = (1)") {
  CbcResult res = cbc_construct(2, 6, 1, WeightSpec::power_weights(1));
  REQUIRE(res.gv.dimension() == 1);
  CHECK(res.gv.components()[0] == 1);
  CHECK(res.gv.base() == 2);
  CHECK(res.gv.max_level() == 6);
}

TEST_CASE("each greedy choice is minimal among scanned candidates") {
  const int m_max = 6;
  const Index n = ipow(2, m_max);
  WeightSpec w = WeightSpec::power_weights(3);
  CbcResult res = cbc_construct(2, m_max, 3, w);

  for (int j = 1; j < 3; ++j) {
    IntVec prefix = res.gv.components().head(j + 1);
    const double chosen = p2_criterion(prefix, n, w);
    for (std::int64_t cand = 1; cand < n; cand += 2) {
      IntVec alt = prefix;
      alt[j] = cand;
      CHECK(chosen <= p2_criterion(alt, n, w) + 1e-13);
    }
  }
}

TEST_CASE("construction log records every decision") {
  CbcResult res = cbc_construct(2, 8, 3, WeightSpec::power_weights(3), 5);
  REQUIRE_FALSE(res.log.empty());
  int scans = 0, refines = 0;
  for (const auto& e : res.log) {
    if (e.stage == "scan") ++scans;
    if (e.stage == "refine") ++refines;
    CHECK(e.criterion >= -1.0);
  }
  CHECK(scans == 3);              // all three components at the scan size
  CHECK(refines == 2 * (8 - 5));  // three levels past the scan, components 2 and 3
  nlohmann::json j = res.log_json();
  CHECK(j.contains("entries"));
  CHECK(j["entries"].size() == res.log.size());
  CHECK(j["entries"][0].contains("stage"));
  CHECK(j["entries"][0].contains("criterion"));
}

TEST_CASE("refinement never loses to the unrefined lift") {
  const int m_max = 8;
  const int scan = 5;
  WeightSpec w = WeightSpec::power_weights(3);
  CbcResult res = cbc_construct(2, m_max, 3, w, scan);
  const Index n = ipow(2, m_max);

  // zeroing every digit above the scan level recovers the scan-size vector
  IntVec lifted = res.gv.components();
  for (int j = 0; j < 3; ++j) lifted[j] %= ipow(2, scan);
  CHECK(p2_criterion(res.gv.components(), n, w) <= p2_criterion(lifted, n, w) + 1e-13);

  for (int j = 0; j < 3; ++j) CHECK(res.gv.components()[j] % 2 == 1);
}

TEST_CASE("construction is deterministic, including the serialized form") {
  WeightSpec w = WeightSpec::power_weights(4);
  CbcResult a = cbc_construct(2, 9, 4, w, 6);
  CbcResult b = cbc_construct(2, 9, 4, w, 6);
  CHECK((a.gv.components() == b.gv.components()).all());

  std::ostringstream sa, sb;
  a.gv.write(sa);
  b.gv.write(sb);
  CHECK(sa.str() == sb.str());
  CHECK(a.gv.content_hash() == b.gv.content_hash());
}

TEST_CASE("constructed vectors beat typical random ones") {
  const int m_max = 8;
  const Index n = ipow(2, m_max);
  WeightSpec w = WeightSpec::power_weights(3);
  CbcResult res = cbc_construct(2, m_max, 3, w);
  const double built = p2_criterion(res.gv.components(), n, w);

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> dist(0, n / 2 - 1);
  int wins = 0;
  const int trials = 10;
  for (int t = 0; t < trials; ++t) {
    IntVec g(3);
    g[0] = 1;
    for (int j = 1; j < 3; ++j) g[j] = 2 * dist(rng) + 1;
    if (built <= p2_criterion(g, n, w)) ++wins;
  }
  CHECK(wins >= trials / 2 + 1);
}

TEST_CASE("bad construction parameters are rejected") {
  WeightSpec w = WeightSpec::power_weights(2);
  CHECK_THROWS_AS(cbc_construct(4, 6, 2, w), std::invalid_argument);   // composite base
  CHECK_THROWS_AS(cbc_construct(2, 0, 2, w), std::invalid_argument);   // no levels
  CHECK_THROWS_AS(cbc_construct(2, 6, 0, w), std::invalid_argument);   // no dimensions
  WeightSpec short_w;
  short_w.gamma = Eigen::ArrayXd::Ones(1);
  CHECK_THROWS_AS(cbc_construct(2, 6, 2, short_w), std::invalid_argument);
}
