#include "ftconv/fft.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace ftconv {

bool is_pow2(Index n) {
  return n > 0 && (static_cast<std::uint64_t>(n) &
                   (static_cast<std::uint64_t>(n) - 1)) == 0;
}

int log2_exact(Index n) {
  return std::countr_zero(static_cast<std::uint64_t>(n));
}

Index bit_reverse_index(Index i, int bits) {
  Index r = 0;
  for (int b = 0; b < bits; ++b) {
    r = (r << 1) | (i & 1);
    i >>= 1;
  }
  return r;
}

void validate_plan(const FftPlan& plan) {
  if (!is_pow2(plan.n_ft) || plan.n_ft < 8)
    throw std::invalid_argument("FftPlan: n_ft must be a power of two >= 8");
  if (plan.points_per_cycle != 4 && plan.points_per_cycle != 8)
    throw std::invalid_argument("FftPlan: points_per_cycle must be 4 or 8");
}

namespace {

// Forward twiddles e^{-2*pi*i*k/n}, k in [0, 3n/4). Computed in double,
// stored in single precision. Cached per transform length.
const std::vector<std::complex<float>>& twiddle_table(Index n) {
  static std::map<Index, std::vector<std::complex<float>>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<float>> tw(static_cast<std::size_t>(3 * n / 4 + 1));
  for (std::size_t k = 0; k < tw.size(); ++k) {
    const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(n);
    const std::complex<double> w = std::polar(1.0, phase);
    tw[k] = std::complex<float>(static_cast<float>(w.real()),
                                static_cast<float>(w.imag()));
  }
  return cache.emplace(n, std::move(tw)).first->second;
}

inline std::complex<float> pick(const std::vector<std::complex<float>>& tw,
                                std::size_t k, bool inverse) {
  const std::complex<float> w = tw[k];
  return inverse ? std::conj(w) : w;
}

}  // namespace

void fft_dif_bitrev(std::complex<float>* x, Index n, FftDirection dir) {
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
  if (n == 1) return;
  const bool inv = dir == FftDirection::Inverse;
  const auto& tw = twiddle_table(n);
  // i^{+-1}: multiplication by -i forward, +i inverse.
  const auto rot90 = [inv](std::complex<float> v) {
    return inv ? std::complex<float>(-v.imag(), v.real())
               : std::complex<float>(v.imag(), -v.real());
  };

  const int m = log2_exact(n);
  Index span = n;
  if (m % 2 == 1) {
    // One radix-2 stage; the extracted output bit lands at the top
    // storage position, consistent with binary bit reversal.
    const Index half = n / 2;
    const std::size_t stride = static_cast<std::size_t>(n / span);
    for (Index j = 0; j < half; ++j) {
      const std::complex<float> a = x[j];
      const std::complex<float> b = x[j + half];
      x[j] = a + b;
      x[j + half] = (a - b) * pick(tw, static_cast<std::size_t>(j) * stride, inv);
    }
    span = half;
  }

  // Radix-4 stages. Outputs of each butterfly are stored with quarters
  // 1 and 2 swapped so the overall output order is binary bit-reversed
  // rather than base-4 digit-reversed.
  while (span >= 4) {
    const Index q = span / 4;
    const std::size_t stride = static_cast<std::size_t>(n / span);
    for (Index base = 0; base < n; base += span) {
      for (Index j = 0; j < q; ++j) {
        const std::size_t k = static_cast<std::size_t>(j) * stride;
        const std::complex<float> a = x[base + j];
        const std::complex<float> b = x[base + j + q];
        const std::complex<float> c = x[base + j + 2 * q];
        const std::complex<float> d = x[base + j + 3 * q];
        const std::complex<float> ac_p = a + c;
        const std::complex<float> ac_m = a - c;
        const std::complex<float> bd_p = b + d;
        const std::complex<float> bd_r = rot90(b - d);
        const std::complex<float> u0 = ac_p + bd_p;
        const std::complex<float> u1 = ac_m + bd_r;
        const std::complex<float> u2 = ac_p - bd_p;
        const std::complex<float> u3 = ac_m - bd_r;
        x[base + j] = u0;
        x[base + j + 2 * q] = (j == 0) ? u1 : u1 * pick(tw, k, inv);
        x[base + j + q] = (j == 0) ? u2 : u2 * pick(tw, 2 * k, inv);
        x[base + j + 3 * q] = (j == 0) ? u3 : u3 * pick(tw, 3 * k, inv);
      }
    }
    span = q;
  }
}

CArrayF fft(const CArrayF& x, const FftPlan& plan, FftDirection dir) {
  validate_plan(plan);
  if (x.size() != plan.n_ft)
    throw std::invalid_argument("fft: input length does not match plan.n_ft");
  if (dir == FftDirection::Forward) {
    CArrayF out = x;
    fft_dif_bitrev(out.data(), out.size(), dir);
    if (plan.ordering == FftOrdering::Natural) out = bit_reverse_permute(out);
    return out;
  }
  // Inverse: bring the spectrum to natural order through the identity
  // B(dif_inverse(B(s))) = n * idft(s), where B is the bit reversal the
  // engine emits.
  CArrayF out =
      plan.ordering == FftOrdering::BitReversed ? bit_reverse_permute(x) : x;
  fft_dif_bitrev(out.data(), out.size(), dir);
  out = bit_reverse_permute(out);
  out *= std::complex<float>(1.0f / static_cast<float>(plan.n_ft), 0.0f);
  return out;
}

}  // namespace ftconv
