#pragma once

#include "latcub/transform.hpp"

#include <cstdint>
#include <vector>

namespace latcub {

/// Bijection between coefficient-ordering indices kappa and transform
/// indices nu, maintained adaptively so that larger observed |Y| sit at
/// smaller kappa. perm[0] == 0 always; whole aliasing classes swap
/// together, so residues mod b^l are preserved on every index block.
class KappaNuMap {
 public:
  explicit KappaNuMap(std::int64_t base);

  std::int64_t base() const { return base_; }
  int level() const { return level_; }
  const std::vector<Index>& perm() const { return perm_; }

  /// Extends the map one level using the magnitudes of the level
  /// spec.level = level()+1 spectrum; swaps are limited to the top `lag`
  /// levels (the quantities the adaptive loop reads).
  void extend(const SpectralArray& spec, int lag);

 private:
  std::int64_t base_;
  int level_;
  std::vector<Index> perm_;
};

/// Sum over kappa in [floor(b^{l-1}), b^l) of |Y(perm[kappa])|: the
/// observable coefficient-block sum S~_{l,m}.
double s_tilde(const SpectralArray& spec, const KappaNuMap& map, int ell);

}  // namespace latcub
