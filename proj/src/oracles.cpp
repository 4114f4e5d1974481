#include "latcub/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace latcub {
namespace oracles {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::int64_t> key_of(const IntVec& k) {
  return std::vector<std::int64_t>(k.data(), k.data() + k.size());
}

// All wavenumbers in [-radius, radius]^d ordered by (max-norm, lexicographic).
std::vector<IntVec> box_candidates(int d, std::int64_t radius) {
  const std::int64_t side = 2 * radius + 1;
  std::int64_t total = 1;
  for (int j = 0; j < d; ++j) {
    if (total > 10'000'000 / side) throw std::invalid_argument("wavenumber box too large");
    total *= side;
  }
  std::vector<IntVec> out;
  out.reserve(total);
  IntVec k(d);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t t = idx;
    for (int j = 0; j < d; ++j) {
      k[j] = t % side - radius;
      t /= side;
    }
    out.push_back(k);
  }
  std::sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) {
    const std::int64_t na = a.abs().maxCoeff();
    const std::int64_t nb = b.abs().maxCoeff();
    if (na != nb) return na < nb;
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  return out;
}

}  // namespace

SpectralArray direct_dft(const SampleBuffer& samples, std::int64_t base) {
  const Index n = static_cast<Index>(samples.values.size());
  if (n > (1 << 14)) throw std::invalid_argument("direct_dft: size guard exceeded (b^m <= 2^14)");
  if (n != ipow(base, samples.level)) throw std::invalid_argument("direct_dft: length is not base^level");
  const int m = samples.level;
  SpectralArray out;
  out.level = m;
  out.coeffs = Eigen::ArrayXcd::Zero(n);
  for (Index nu = 0; nu < n; ++nu) {
    Complex acc = 0.0;
    for (Index i = 0; i < n; ++i) {
      // exponent sum_l i_l * nubar_{l+1} / b^{l+1}, evaluated digit by digit
      double phase = 0.0;
      Index it = i;
      Index bl1 = base;  // b^{l+1}
      for (int l = 0; l < m; ++l) {
        const Index il = it % base;
        it /= base;
        const Index nubar = nu % bl1;
        phase += static_cast<double>(il) * static_cast<double>(nubar) / static_cast<double>(bl1);
        bl1 *= base;
      }
      acc += samples.values[i] * std::polar(1.0, -kTwoPi * phase);
    }
    out.coeffs[nu] = acc / static_cast<double>(n);
  }
  return out;
}

bool DualBox::contains(const IntVec& k) const {
  return std::any_of(members.begin(), members.end(), [&k](const IntVec& m) { return (m == k).all(); });
}

DualBox dual_box_enumeration(const GeneratingVector& gv, int m, std::int64_t radius) {
  const int d = gv.dimension();
  DualBox box;
  box.radius = radius;
  box.dimension = d;
  box.level = m;
  for (const IntVec& k : box_candidates(d, radius)) {
    if (gv.nu_tilde(k, m) == 0) box.members.push_back(k);
  }
  return box;
}

ExplicitKappaMap explicit_kappa_map(const GeneratingVector& gv, int m, std::int64_t initial_box_radius) {
  if (m < 0 || m > gv.max_level()) throw std::out_of_range("explicit_kappa_map: level out of range");
  const std::int64_t b = gv.base();
  const int d = gv.dimension();

  std::int64_t radius = std::max<std::int64_t>(initial_box_radius, 1);
  std::vector<IntVec> candidates = box_candidates(d, radius);
  std::map<std::vector<std::int64_t>, bool> assigned;

  ExplicitKappaMap map;
  map.level = m;
  map.wavenumbers.push_back(IntVec::Zero(d));
  assigned[key_of(map.wavenumbers[0])] = true;

  // Picks the smallest unassigned wavenumber with the requested residue at
  // level `lvl`, growing the search box when exhausted.
  auto pick = [&](int lvl, Index residue) -> IntVec {
    for (int attempt = 0; attempt < 8; ++attempt) {
      for (const IntVec& k : candidates) {
        if (gv.nu_tilde(k, lvl) != residue) continue;
        if (!assigned.count(key_of(k))) return k;
      }
      radius *= 2;
      candidates = box_candidates(d, radius);
    }
    throw std::runtime_error("explicit_kappa_map: no admissible wavenumber found after box growth");
  };

  for (int lvl = 0; lvl < m; ++lvl) {
    const Index bl = ipow(b, lvl);
    map.wavenumbers.resize(bl * b, IntVec::Zero(d));
    for (Index kappa = 0; kappa < bl; ++kappa) {
      const Index nu_cur = gv.nu_tilde(map.wavenumbers[kappa], lvl);
      const Index nu_next = gv.nu_tilde(map.wavenumbers[kappa], lvl + 1);
      const Index a = (nu_next - nu_cur) / bl;
      for (std::int64_t slot = 1; slot < b; ++slot) {
        // slot a (when a != 0) takes the parent residue; slot a' takes nu_cur + a'*b^lvl
        const Index target = (slot == a) ? nu_cur : nu_cur + slot * bl;
        const IntVec k = pick(lvl + 1, target);
        map.wavenumbers[kappa + slot * bl] = k;
        assigned[key_of(k)] = true;
      }
    }
  }
  return map;
}

bool kappa_map_admissible(const ExplicitKappaMap& map, const GeneratingVector& gv) {
  const std::int64_t b = gv.base();
  for (int l = 0; l <= map.level; ++l) {
    const Index bl = ipow(b, l);
    std::vector<bool> seen(bl, false);
    for (Index kappa = 0; kappa < bl; ++kappa) {
      const Index nu = gv.nu_tilde(map.wavenumbers[kappa], l);
      if (seen[nu]) return false;
      seen[nu] = true;
    }
  }
  // injectivity of the listed prefix
  std::map<std::vector<std::int64_t>, bool> seen_k;
  for (const IntVec& k : map.wavenumbers) {
    if (seen_k.count(key_of(k))) return false;
    seen_k[key_of(k)] = true;
  }
  return true;
}

}  // namespace oracles
}  // namespace latcub
