#pragma once

#include "ftconv/core.hpp"

namespace ftconv {

/// Overlap-add split of the coefficient array: R = ceil(K / K') sub-filters
/// of exactly K' taps each, the last one zero-padded.
struct OlaConfig {
  Index sub_filter_taps = 0;  // K'

  Index sub_filter_count(Index taps) const {
    if (sub_filter_taps < 1)
      throw std::invalid_argument("OlaConfig: sub_filter_taps must be >= 1");
    return (taps + sub_filter_taps - 1) / sub_filter_taps;
  }
};

/// Direct single-precision evaluation of the causal FIR sum.
inline CArrayF conv_naive_td(const CArrayF& x, const CArrayF& h) {
  return conv_direct<float>(x, h);
}

std::vector<CArrayF> split_coefficients(const CArrayF& h, Index sub_filter_taps);

/// Overlap-add: each sub-filter output is shifted by r*K' and accumulated
/// in ascending r, which pins the single-precision rounding order.
CArrayF conv_ola_td(const CArrayF& x, const CArrayF& h, const OlaConfig& cfg);

}  // namespace ftconv
