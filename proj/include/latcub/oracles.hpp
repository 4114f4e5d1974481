#pragma once

#include "latcub/transform.hpp"

#include <vector>

namespace latcub {
namespace oracles {

// Slow, obviously-correct reference computations for tests and audits.
// All are size-guarded; none shares kernels with the fast paths.

/// Literal evaluation of the defining digit sum for Y_m, O(b^{2m}).
/// Guard: b^m <= 2^14.
SpectralArray direct_dft(const SampleBuffer& samples, std::int64_t base);

/// Wavenumbers k in [-K,K]^d with nu_tilde_m(k) = 0 (the dual lattice
/// restricted to a box). Guard: (2K+1)^d <= 10^7.
struct DualBox {
  std::int64_t radius = 0;
  int dimension = 0;
  int level = 0;
  std::vector<IntVec> members;

  bool contains(const IntVec& k) const;
};

DualBox dual_box_enumeration(const GeneratingVector& gv, int m, std::int64_t radius);

/// An explicit wavenumber assignment kappa -> k for kappa < b^level,
/// choosing at each step the (max-norm, lexicographic) smallest admissible
/// wavenumber. Intended for d <= 3.
struct ExplicitKappaMap {
  std::vector<IntVec> wavenumbers;
  int level = 0;
};

ExplicitKappaMap explicit_kappa_map(const GeneratingVector& gv, int m,
                                    std::int64_t initial_box_radius = 2);

/// Finite-level consequence of the nested coset structure: the map prefix is injective
/// and nu_tilde_l composed with it is a bijection onto {0,...,b^l-1} for
/// every l <= level.
bool kappa_map_admissible(const ExplicitKappaMap& map, const GeneratingVector& gv);

}  // namespace oracles
}  // namespace latcub
