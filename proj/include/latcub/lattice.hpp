#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace latcub {

using Index = std::int64_t;
using IntVec = Eigen::Array<std::int64_t, Eigen::Dynamic, 1>;

bool is_prime(std::int64_t n);

/// b^e in exact 64-bit arithmetic; throws std::overflow_error past 2^62.
Index ipow(std::int64_t b, int e);

/// Number of base-b digits of i (0 for i == 0).
int digit_count(std::int64_t b, Index i);

/// Base-b digit reversal of i written with `digits` digits.
Index digit_reverse(std::int64_t b, Index i, int digits);

/// Uniform random offset applied to all nodes modulo 1.
struct Shift {
  Eigen::ArrayXd delta;
  std::uint64_t seed = 0;

  static Shift draw(int dim, std::uint64_t seed);
  static Shift none(int dim);
};

/// Coordinatewise (x + delta) mod 1.
Eigen::ArrayXd shifted_value(const Eigen::ArrayXd& x, const Eigen::ArrayXd& delta);

/// An embedded rank-1 lattice sequence in base b with b^max_level points.
///
/// The integer vector g encodes the finest-level generator g / b^max_level;
/// the level-m generator is g mod b^m and the first b^m nodes of the
/// extensible ordering are exactly the level-m node set.
class GeneratingVector {
 public:
  /// Empty placeholder (dimension 0); any real use requires the full ctor.
  GeneratingVector() : base_(2), max_level_(0) {}
  GeneratingVector(std::int64_t base, int max_level, IntVec g);

  std::int64_t base() const { return base_; }
  int max_level() const { return max_level_; }
  int dimension() const { return static_cast<int>(g_.size()); }
  const IntVec& components() const { return g_; }
  Index point_count() const { return ipow(base_, max_level_); }

  /// g mod b^m: the generator of the level-m node set, components in {0,...,b^m-1}.
  IntVec level_generator(int m) const;

  /// Node i as exact numerators on the b^{-max_level} grid.
  IntVec node_scaled(Index i) const;

  /// Node i in [0,1)^d, extensible (digit-reversed) ordering.
  Eigen::ArrayXd node(Index i) const;

  /// Nodes b^{m-1} .. b^m - 1, the block added when extending level m-1 to m.
  std::vector<Eigen::ArrayXd> node_block(int m) const;

  /// Dual-coset residue of wavenumber k at level m, exact integer arithmetic.
  Index nu_tilde(const IntVec& k, int m) const;

  /// Restriction to the first dim coordinates.
  GeneratingVector prefix(int dim) const;

  /// FNV-1a hash of (b, max_level, g) for reproducibility stamps.
  std::uint64_t content_hash() const;

  void write(std::ostream& out) const;
  void save(const std::string& path) const;
  static GeneratingVector parse(std::istream& in);
  static GeneratingVector load(const std::string& path);

 private:
  std::int64_t base_;
  int max_level_;
  IntVec g_;
};

}  // namespace latcub
