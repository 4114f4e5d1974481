#include "latcub/lattice.hpp"

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace latcub {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

Index ipow(std::int64_t b, int e) {
  if (e < 0) throw std::invalid_argument("ipow: negative exponent");
  Index r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (Index{1} << 62) / b) throw std::overflow_error("ipow: exceeds 2^62");
    r *= b;
  }
  return r;
}

int digit_count(std::int64_t b, Index i) {
  int m = 0;
  while (i > 0) {
    i /= b;
    ++m;
  }
  return m;
}

Index digit_reverse(std::int64_t b, Index i, int digits) {
  Index j = 0;
  for (int l = 0; l < digits; ++l) {
    j = j * b + i % b;
    i /= b;
  }
  return j;
}

Shift Shift::draw(int dim, std::uint64_t seed) {
  Shift s;
  s.seed = seed;
  s.delta.resize(dim);
  std::mt19937_64 rng(seed);
  for (int j = 0; j < dim; ++j) {
    // top 53 bits, uniform on [0,1); avoids the library distribution for
    // cross-platform reproducibility
    s.delta[j] = static_cast<double>(rng() >> 11) * 0x1p-53;
  }
  return s;
}

Shift Shift::none(int dim) {
  Shift s;
  s.delta = Eigen::ArrayXd::Zero(dim);
  return s;
}

Eigen::ArrayXd shifted_value(const Eigen::ArrayXd& x, const Eigen::ArrayXd& delta) {
  Eigen::ArrayXd y = x + delta;
  return y - y.floor();
}

GeneratingVector::GeneratingVector(std::int64_t base, int max_level, IntVec g)
    : base_(base), max_level_(max_level), g_(std::move(g)) {
  if (!is_prime(base_)) throw std::invalid_argument("GeneratingVector: base must be prime");
  if (max_level_ < 1) throw std::invalid_argument("GeneratingVector: max_level must be >= 1");
  if (g_.size() < 1) throw std::invalid_argument("GeneratingVector: dimension must be >= 1");
  const Index n = ipow(base_, max_level_);
  for (Eigen::Index j = 0; j < g_.size(); ++j) {
    if (g_[j] < 0 || g_[j] >= n)
      throw std::invalid_argument("GeneratingVector: component out of range [0, b^max_level)");
    // b^{max_level-1} * g mod b^max_level must be nonzero componentwise,
    // i.e. the level-1 generator has no zero coordinate
    if (g_[j] % base_ == 0)
      throw std::invalid_argument("GeneratingVector: component divisible by base (zero level-1 coordinate)");
  }
}

IntVec GeneratingVector::level_generator(int m) const {
  if (m < 1 || m > max_level_) throw std::out_of_range("level_generator: level out of range");
  const Index bm = ipow(base_, m);
  IntVec gm(g_.size());
  for (Eigen::Index j = 0; j < g_.size(); ++j) gm[j] = g_[j] % bm;
  return gm;
}

IntVec GeneratingVector::node_scaled(Index i) const {
  if (i < 0 || i >= point_count()) throw std::out_of_range("node: lattice sequence exhausted");
  IntVec coords = IntVec::Zero(g_.size());
  if (i == 0) return coords;
  const int m = digit_count(base_, i);
  const Index bm = ipow(base_, m);
  const Index j = digit_reverse(base_, i, m);
  const Index scale = ipow(base_, max_level_ - m);
  for (Eigen::Index c = 0; c < g_.size(); ++c) {
    coords[c] = (j * (g_[c] % bm)) % bm * scale;
  }
  return coords;
}

Eigen::ArrayXd GeneratingVector::node(Index i) const {
  const IntVec scaled = node_scaled(i);
  const double denom = static_cast<double>(point_count());
  return scaled.cast<double>() / denom;
}

std::vector<Eigen::ArrayXd> GeneratingVector::node_block(int m) const {
  if (m < 1 || m > max_level_) throw std::out_of_range("node_block: level out of range");
  const Index lo = ipow(base_, m - 1);
  const Index hi = ipow(base_, m);
  std::vector<Eigen::ArrayXd> block;
  block.reserve(hi - lo);
  for (Index i = lo; i < hi; ++i) block.push_back(node(i));
  return block;
}

Index GeneratingVector::nu_tilde(const IntVec& k, int m) const {
  if (m < 0 || m > max_level_) throw std::out_of_range("nu_tilde: level out of range");
  if (k.size() != g_.size()) throw std::invalid_argument("nu_tilde: wavenumber dimension mismatch");
  if (m == 0) return 0;
  const Index bm = ipow(base_, m);
  Index acc = 0;
  for (Eigen::Index j = 0; j < g_.size(); ++j) {
    const Index kj = ((k[j] % bm) + bm) % bm;
    acc = (acc + kj * (g_[j] % bm)) % bm;
  }
  return acc;
}

GeneratingVector GeneratingVector::prefix(int dim) const {
  if (dim < 1 || dim > dimension()) throw std::invalid_argument("prefix: dimension out of range");
  return GeneratingVector(base_, max_level_, g_.head(dim));
}

std::uint64_t GeneratingVector::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(base_));
  mix(static_cast<std::uint64_t>(max_level_));
  for (Eigen::Index j = 0; j < g_.size(); ++j) mix(static_cast<std::uint64_t>(g_[j]));
  return h;
}

void GeneratingVector::write(std::ostream& out) const {
  out << base_ << ' ' << max_level_ << ' ' << dimension() << '\n';
  for (Eigen::Index j = 0; j < g_.size(); ++j) {
    out << g_[j] << (j + 1 < g_.size() ? ' ' : '\n');
  }
}

void GeneratingVector::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write(out);
}

GeneratingVector GeneratingVector::parse(std::istream& in) {
  std::int64_t b = 0;
  int m_max = 0, d = 0;
  if (!(in >> b >> m_max >> d)) throw std::runtime_error("generating vector: malformed header");
  if (d < 1) throw std::runtime_error("generating vector: dimension must be positive");
  IntVec g(d);
  for (int j = 0; j < d; ++j) {
    if (!(in >> g[j])) throw std::runtime_error("generating vector: truncated component list");
  }
  return GeneratingVector(b, m_max, std::move(g));
}

GeneratingVector GeneratingVector::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open generating vector file: " + path);
  return parse(in);
}

}  // namespace latcub
