#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latcub/oracles.hpp"

#include <random>
#include <set>

using namespace latcub;
using namespace latcub::oracles;

namespace {

GeneratingVector example_lattice() {
  IntVec g(2);
  g << 1, 27;
  return GeneratingVector(2, 6, std::move(g));
}

}  // namespace

TEST_CASE("direct_dft constants and two-point case") {
  SampleBuffer buf;
  buf.level = 1;
  buf.values = {Complex(3.0, 1.0), Complex(1.0, -1.0)};
  const auto spec = direct_dft(buf, 2);
  CHECK(std::abs(spec.coeffs[0] - Complex(2.0, 0.0)) < 1e-14);
  CHECK(std::abs(spec.coeffs[1] - Complex(1.0, 1.0)) < 1e-14);

  SampleBuffer constant;
  constant.level = 3;
  constant.values.assign(8, Complex(0.4, 0.0));
  const auto cs = direct_dft(constant, 2);
  CHECK(std::abs(cs.coeffs[0] - 0.4) < 1e-14);
  for (Index nu = 1; nu < 8; ++nu) CHECK(std::abs(cs.coeffs[nu]) < 1e-14);

  SampleBuffer huge;
  huge.level = 15;
  huge.values.assign(1 << 15, Complex(0, 0));
  CHECK_THROWS_AS((void)direct_dft(huge, 2), std::invalid_argument);
}

TEST_CASE("dual box membership agrees with residue arithmetic") {
  const auto gv = example_lattice();
  const auto box = dual_box_enumeration(gv, 6, 20);
  IntVec zero = IntVec::Zero(2);
  CHECK(box.contains(zero));
  for (const auto& k : box.members) {
    CHECK(gv.nu_tilde(k, 6) == 0);
    CHECK(box.contains((-k).eval()));
  }

  // independent recount over residue classes: k = (k1, k2) is dual iff
  // k1 + 27 k2 = 0 mod 64
  Index count = 0;
  for (std::int64_t k1 = -20; k1 <= 20; ++k1) {
    for (std::int64_t k2 = -20; k2 <= 20; ++k2) {
      if (((k1 + 27 * k2) % 64 + 64) % 64 == 0) ++count;
    }
  }
  CHECK(static_cast<Index>(box.members.size()) == count);
}

TEST_CASE("explicit kappa map pins the smallest admissible wavenumbers") {
  const auto gv = example_lattice();
  const auto map = explicit_kappa_map(gv, 3);
  CHECK((map.wavenumbers[0] == 0).all());
  // kappa = 1 must carry residue nu_1 = 1; the norm-smallest, lex-smallest
  // choice is (-1, 0)
  CHECK(map.wavenumbers[1][0] == -1);
  CHECK(map.wavenumbers[1][1] == 0);
  CHECK(kappa_map_admissible(map, gv));
}

TEST_CASE("explicit kappa map residues follow the coset tree") {
  const auto gv = example_lattice();
  const auto map = explicit_kappa_map(gv, 6);
  CHECK(map.wavenumbers.size() == 64);
  CHECK(kappa_map_admissible(map, gv));
  // nested-prefix property: the level-l representative of kappa's coset is
  // at index kappa mod 2^l
  for (int l = 0; l <= 6; ++l) {
    const Index bl = ipow(2, l);
    for (Index kappa = 0; kappa < 64; ++kappa) {
      CHECK(gv.nu_tilde(map.wavenumbers[kappa], l) ==
            gv.nu_tilde(map.wavenumbers[kappa % bl], l));
    }
  }
  // injectivity
  std::set<std::pair<Index, Index>> seen;
  for (const auto& k : map.wavenumbers) seen.insert({k[0], k[1]});
  CHECK(seen.size() == 64);
}

TEST_CASE("explicit kappa map works in one dimension") {
  IntVec g(1);
  g << 5;
  const GeneratingVector gv(2, 5, std::move(g));
  const auto map = explicit_kappa_map(gv, 5);
  CHECK(kappa_map_admissible(map, gv));
}
