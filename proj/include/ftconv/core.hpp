#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace ftconv {

template <class Scalar>
using CplxArray = Eigen::ArrayX<std::complex<Scalar>>;

using CArrayF = CplxArray<float>;
using CArrayD = CplxArray<double>;
using RArrayF = Eigen::ArrayXf;

using Index = Eigen::Index;

/// Thrown when a cost-model query has no calibration data and
/// extrapolation is disabled.
struct unsupported_configuration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bank of FIR coefficient arrays (templates). Templates are indexed
/// 1..M in the filter-output-plane; row 0 is reserved for the
/// unfiltered input.
struct FilterBank {
  std::vector<CArrayF> templates;
  Index max_taps = 0;

  Index count() const { return static_cast<Index>(templates.size()); }
};

FilterBank make_filter_bank(std::vector<CArrayF> templates);

struct ErrorReport {
  double rrmse = 0.0;
  double max_abs_err = 0.0;
  Index n_compared = 0;
};

template <class Scalar>
void require_finite(const CplxArray<Scalar>& x, const char* what) {
  if (!x.isFinite().all())
    throw std::invalid_argument(std::string(what) + ": non-finite sample");
}

// ---------------------------------------------------------------------------
// Double-precision reference paths. These are the ground truth every
// single-precision algorithm is verified against.

/// Textbook O(N^2) DFT. The inverse applies 1/N scaling.
CArrayD dft_oracle(const CArrayD& x, bool inverse = false);

/// Direct causal convolution, same-length output: samples before the
/// start of the input are treated as zero.
template <class Scalar>
CplxArray<Scalar> conv_direct(const CplxArray<Scalar>& x,
                              const CplxArray<Scalar>& h) {
  if (x.size() == 0 || h.size() == 0)
    throw std::invalid_argument("conv_direct: empty input");
  const Index n = x.size();
  CplxArray<Scalar> y = CplxArray<Scalar>::Zero(n);
  const Index taps = std::min(h.size(), n);
  for (Index k = 0; k < taps; ++k)
    y.segment(k, n - k) += h[k] * x.segment(0, n - k);
  return y;
}

inline CArrayD conv_oracle(const CArrayD& x, const CArrayD& h) {
  return conv_direct<double>(x, h);
}

// ---------------------------------------------------------------------------
// rRMSE: relative L2 error of a test buffer against a double-precision
// reference. Falls back to absolute RMS when the reference is all zero.

template <class Scalar>
ErrorReport rrmse(const CplxArray<Scalar>& test, const CArrayD& reference) {
  if (test.size() != reference.size())
    throw std::invalid_argument("rrmse: length mismatch");
  if (test.size() == 0)
    throw std::invalid_argument("rrmse: empty buffers");
  double num = 0.0, den = 0.0, max_err = 0.0;
  for (Index i = 0; i < test.size(); ++i) {
    const std::complex<double> t(test[i].real(), test[i].imag());
    const double e = std::abs(t - reference[i]);
    num += e * e;
    den += std::norm(reference[i]);
    max_err = std::max(max_err, e);
  }
  ErrorReport r;
  r.rrmse = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  r.max_abs_err = max_err;
  r.n_compared = test.size();
  return r;
}

inline CArrayD widen(const CArrayF& x) {
  CArrayD y(x.size());
  for (Index i = 0; i < x.size(); ++i)
    y[i] = std::complex<double>(x[i].real(), x[i].imag());
  return y;
}

// ---------------------------------------------------------------------------
// Deterministic data generation: xorshift64* seeded through splitmix64,
// components uniform in [-1, 1).

class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ull;
  }

  std::uint64_t next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dull;
  }

  /// Uniform in [-1, 1), 24 bits of resolution.
  float next_pm1() {
    const std::uint32_t bits = static_cast<std::uint32_t>(next_u64() >> 40);
    return 2.0f * (static_cast<float>(bits) * (1.0f / 16777216.0f)) - 1.0f;
  }

  static std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

CArrayF generate_signal(std::uint64_t seed, Index n);
FilterBank generate_bank(std::uint64_t seed, Index filters, Index taps);

}  // namespace ftconv
