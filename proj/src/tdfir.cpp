#include "ftconv/tdfir.hpp"

namespace ftconv {

std::vector<CArrayF> split_coefficients(const CArrayF& h, Index sub_filter_taps) {
  if (sub_filter_taps < 1)
    throw std::invalid_argument("split_coefficients: sub_filter_taps must be >= 1");
  if (h.size() == 0)
    throw std::invalid_argument("split_coefficients: empty coefficients");
  const Index taps = h.size();
  const Index r = (taps + sub_filter_taps - 1) / sub_filter_taps;
  std::vector<CArrayF> subs;
  subs.reserve(static_cast<std::size_t>(r));
  for (Index i = 0; i < r; ++i) {
    CArrayF sub = CArrayF::Zero(sub_filter_taps);
    const Index begin = i * sub_filter_taps;
    const Index len = std::min(sub_filter_taps, taps - begin);
    sub.head(len) = h.segment(begin, len);
    subs.push_back(std::move(sub));
  }
  return subs;
}

CArrayF conv_ola_td(const CArrayF& x, const CArrayF& h, const OlaConfig& cfg) {
  if (x.size() == 0 || h.size() == 0)
    throw std::invalid_argument("conv_ola_td: empty input");
  const auto subs = split_coefficients(h, cfg.sub_filter_taps);
  const Index n = x.size();
  const Index kprime = cfg.sub_filter_taps;
  CArrayF y = CArrayF::Zero(n);
  for (std::size_t r = 0; r < subs.size(); ++r) {
    const Index shift = static_cast<Index>(r) * kprime;
    if (shift >= n) break;
    const CArrayF partial = conv_direct<float>(x, subs[r]);
    y.segment(shift, n - shift) += partial.head(n - shift);
  }
  return y;
}

}  // namespace ftconv
