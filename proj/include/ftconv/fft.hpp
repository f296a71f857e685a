#pragma once

#include "ftconv/core.hpp"

namespace ftconv {

enum class FftOrdering { Natural, BitReversed };
enum class FftDirection { Forward, Inverse };

/// Transform parameters. points_per_cycle is carried for the cost model
/// only; it does not change the numerics.
struct FftPlan {
  Index n_ft = 0;
  int points_per_cycle = 8;  // N_FT-PC
  FftOrdering ordering = FftOrdering::Natural;
};

bool is_pow2(Index n);
int log2_exact(Index n);

Index bit_reverse_index(Index i, int bits);

/// Binary bit reversal over log2(n) bits; an involution.
template <class Scalar>
CplxArray<Scalar> bit_reverse_permute(const CplxArray<Scalar>& x) {
  const Index n = x.size();
  if (!is_pow2(n) || n < 1)
    throw std::invalid_argument("bit_reverse_permute: length must be a power of two");
  const int bits = log2_exact(n);
  CplxArray<Scalar> out(n);
  for (Index i = 0; i < n; ++i) out[bit_reverse_index(i, bits)] = x[i];
  return out;
}

/// In-place decimation-in-frequency transform: natural-order input,
/// bit-reversed output, no normalization. Radix-4 stages with one
/// radix-2 stage when log2(n) is odd.
void fft_dif_bitrev(std::complex<float>* data, Index n, FftDirection dir);

/// Forward: natural-order input, output in plan.ordering. Inverse:
/// input in plan.ordering, natural-order output, scaled by 1/n.
CArrayF fft(const CArrayF& x, const FftPlan& plan, FftDirection dir);

void validate_plan(const FftPlan& plan);

}  // namespace ftconv
