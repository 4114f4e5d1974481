#include "latcub/transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latcub {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_power(Index n, std::int64_t base, int level, const char* what) {
  if (n != ipow(base, level)) throw std::invalid_argument(std::string(what) + ": length is not base^level");
}

std::vector<Complex> twiddles(Index n) {
  std::vector<Complex> tw(n);
  for (Index q = 0; q < n; ++q) tw[q] = std::polar(1.0, -kTwoPi * static_cast<double>(q) / static_cast<double>(n));
  return tw;
}

// One decimation stage: combines b consecutive length-`len` transforms into
// length b*len transforms, in place over the whole array.
void stage(Eigen::ArrayXcd& a, Index len, std::int64_t base, OpCounter* ops) {
  const Index n = a.size();
  const Index big = base * len;
  const auto tw = twiddles(big);
  std::uint64_t flops = 0;
  if (base == 2) {
    for (Index start = 0; start < n; start += big) {
      for (Index nu = 0; nu < len; ++nu) {
        const Complex x0 = a[start + nu];
        const Complex x1 = tw[nu] * a[start + len + nu];
        a[start + nu] = 0.5 * (x0 + x1);
        a[start + len + nu] = 0.5 * (x0 - x1);
      }
    }
    flops = static_cast<std::uint64_t>(n / 2) * 14;  // cmul + 2 cadd + 2 scalings
  } else {
    std::vector<Complex> x(base);
    const double inv_b = 1.0 / static_cast<double>(base);
    for (Index start = 0; start < n; start += big) {
      for (Index nu = 0; nu < len; ++nu) {
        for (std::int64_t t = 0; t < base; ++t) x[t] = a[start + t * len + nu];
        for (std::int64_t t = 0; t < base; ++t) {
          const Index nu_out = nu + t * len;
          Complex acc = x[0];
          for (std::int64_t q = 1; q < base; ++q) {
            acc += x[q] * tw[(q * nu_out) % big];
            flops += 8;
          }
          a[start + nu_out] = inv_b * acc;
          flops += 2;
        }
      }
    }
  }
  if (ops) ops->flops += flops;
}

}  // namespace

SpectralArray transform(const SampleBuffer& samples, std::int64_t base, OpCounter* ops) {
  const Index n = static_cast<Index>(samples.values.size());
  check_power(n, base, samples.level, "transform");
  SpectralArray out;
  out.level = samples.level;
  out.coeffs.resize(n);
  for (Index i = 0; i < n; ++i) out.coeffs[i] = samples.values[i];
  for (Index len = 1; len < n; len *= base) stage(out.coeffs, len, base, ops);
  return out;
}

SpectralArray merge(const std::vector<SpectralArray>& blocks, std::int64_t base, OpCounter* ops) {
  if (static_cast<std::int64_t>(blocks.size()) != base)
    throw std::invalid_argument("merge: need exactly `base` block transforms");
  const int sub_level = blocks.front().level;
  const Index len = blocks.front().coeffs.size();
  check_power(len, base, sub_level, "merge");
  for (const auto& blk : blocks) {
    if (blk.level != sub_level || blk.coeffs.size() != len)
      throw std::invalid_argument("merge: mismatched block levels");
  }
  SpectralArray out;
  out.level = sub_level + 1;
  out.coeffs.resize(base * len);
  for (std::int64_t a = 0; a < base; ++a) out.coeffs.segment(a * len, len) = blocks[a].coeffs;
  stage(out.coeffs, len, base, ops);
  return out;
}

Complex discrete_coefficient(const SpectralArray& spec, const GeneratingVector& gv,
                             const IntVec& k, const Shift& shift) {
  double dot = 0.0;
  for (Eigen::Index j = 0; j < k.size(); ++j) dot += static_cast<double>(k[j]) * shift.delta[j];
  dot -= std::floor(dot);
  const Index nu = gv.nu_tilde(k, spec.level);
  return std::polar(1.0, -kTwoPi * dot) * spec.coeffs[nu];
}

}  // namespace latcub
