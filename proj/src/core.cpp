#include "ftconv/core.hpp"

#include <cmath>
#include <numbers>

namespace ftconv {

FilterBank make_filter_bank(std::vector<CArrayF> templates) {
  if (templates.empty())
    throw std::invalid_argument("FilterBank: needs at least one template");
  FilterBank bank;
  bank.templates = std::move(templates);
  for (const auto& h : bank.templates) {
    if (h.size() == 0)
      throw std::invalid_argument("FilterBank: empty template");
    require_finite(h, "FilterBank template");
    bank.max_taps = std::max(bank.max_taps, h.size());
  }
  return bank;
}

CArrayD dft_oracle(const CArrayD& x, bool inverse) {
  const Index n = x.size();
  if (n < 1) throw std::invalid_argument("dft_oracle: empty input");
  const double sign = inverse ? 1.0 : -1.0;
  CArrayD out(n);
  for (Index k = 0; k < n; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (Index j = 0; j < n; ++j) {
      const double phase = sign * 2.0 * std::numbers::pi *
                           static_cast<double>(k) * static_cast<double>(j) /
                           static_cast<double>(n);
      acc += x[j] * std::polar(1.0, phase);
    }
    out[k] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

CArrayF generate_signal(std::uint64_t seed, Index n) {
  if (n < 1) throw std::invalid_argument("generate_signal: n must be >= 1");
  XorShift64Star rng(seed);
  CArrayF x(n);
  for (Index i = 0; i < n; ++i) {
    const float re = rng.next_pm1();
    const float im = rng.next_pm1();
    x[i] = std::complex<float>(re, im);
  }
  return x;
}

FilterBank generate_bank(std::uint64_t seed, Index filters, Index taps) {
  if (filters < 1 || taps < 1)
    throw std::invalid_argument("generate_bank: filters and taps must be >= 1");
  XorShift64Star rng(seed);
  std::vector<CArrayF> templates;
  templates.reserve(static_cast<std::size_t>(filters));
  for (Index m = 0; m < filters; ++m) {
    CArrayF h(taps);
    for (Index i = 0; i < taps; ++i) {
      const float re = rng.next_pm1();
      const float im = rng.next_pm1();
      h[i] = std::complex<float>(re, im);
    }
    templates.push_back(std::move(h));
  }
  return make_filter_bank(std::move(templates));
}

}  // namespace ftconv
