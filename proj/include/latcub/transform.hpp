#pragma once

#include "latcub/lattice.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <vector>

namespace latcub {

using Complex = std::complex<double>;

/// Integrand values y_i = f(z_i (+) delta) in extensible node order.
struct SampleBuffer {
  std::vector<Complex> values;
  int level = 0;
  Shift shift;

  Index evaluation_count() const { return static_cast<Index>(values.size()); }
};

/// Discrete Fourier data Y_m(nu), nu in {0,...,b^m-1}; coeffs[0] is the
/// cubature estimate (the 1/b^m normalization lives inside the transform).
struct SpectralArray {
  Eigen::ArrayXcd coeffs;
  int level = 0;
};

/// Counts real floating-point operations spent in butterflies, for the
/// measured O(m b^m) cost contract.
struct OpCounter {
  std::uint64_t flops = 0;
};

/// Full transform of a level-m buffer in O(m b^m) operations.
SpectralArray transform(const SampleBuffer& samples, std::int64_t base, OpCounter* ops = nullptr);

/// One merge stage: blocks[a] is the level-(m-1) transform of the sample
/// block with top index digit a; the result is the level-m transform of the
/// concatenated buffer.
SpectralArray merge(const std::vector<SpectralArray>& blocks, std::int64_t base, OpCounter* ops = nullptr);

/// Discrete Fourier coefficient of wavenumber k: the shift phase times
/// Y_m(nu_tilde_m(k)).
Complex discrete_coefficient(const SpectralArray& spec, const GeneratingVector& gv,
                             const IntVec& k, const Shift& shift);

}  // namespace latcub
