#pragma once

#include "ftconv/core.hpp"
#include "ftconv/fft.hpp"

namespace ftconv {

/// Forward transform of a zero-padded coefficient array, stored in the
/// ordering the execution plan multiplies in.
struct PreparedTemplate {
  CArrayF spectrum;
  FftOrdering ordering = FftOrdering::Natural;
  Index original_taps = 0;
};

enum class PlanKind { NaiveTD, OlaTD, NaiveFD, Aols, Tols };

bool is_fd_kind(PlanKind kind);
bool is_ols_kind(PlanKind kind);
const char* plan_kind_name(PlanKind kind);
PlanKind plan_kind_from_name(const std::string& name);

struct ExecutionPlan {
  PlanKind kind = PlanKind::Aols;
  Index sub_filter_taps = 0;  // K', TD kinds; 0 means no split (R = 1)
  Index n_ft = 2048;          // FD kinds
  int n_ft_pc = 8;            // FD kinds, cost model only
  int replicas = 1;           // P
  bool power_output = false;
  int devices = 1;            // D
  FftOrdering ordering = FftOrdering::BitReversed;

  FftPlan fft_plan() const { return FftPlan{n_ft, n_ft_pc, ordering}; }
};

/// Throws invalid_argument if the plan violates its invariants or cannot
/// hold a filter of max_taps coefficients.
void validate_plan(const ExecutionPlan& plan, Index max_taps);

struct LaunchLog {
  long long launches = 0;
  long long forward_transforms = 0;
  std::vector<long long> chunks_per_launch;
};

/// (M+1) x N grid of spectral-power values. Row 0 holds the power of the
/// unfiltered input, rows 1..M the power of each filter output.
struct FilterOutputPlane {
  std::vector<RArrayF> rows;

  Index row_count() const { return static_cast<Index>(rows.size()); }
  Index cols() const { return rows.empty() ? 0 : rows.front().size(); }
};

struct PlanResult {
  std::vector<CArrayF> outputs;  // per-filter complex outputs (no power)
  FilterOutputPlane fop;         // populated when plan.power_output
  LaunchLog log;
};

/// Full-length frequency-domain convolution: both arrays zero-padded to
/// the smallest power of two >= N+K-1, transformed, multiplied, inverted,
/// truncated to N samples.
CArrayF conv_naive_fd(const CArrayF& x, const CArrayF& h);

PreparedTemplate prepare_template(const CArrayF& h, const FftPlan& plan);

/// Overlap-save convolution. Successive chunks overlap by K-1 samples;
/// the first chunk is prefixed with K-1 zeros and the first K-1 outputs
/// of every chunk are discarded.
CArrayF conv_ols_fd(const CArrayF& x, const PreparedTemplate& tmpl,
                    const FftPlan& plan);

/// out_i = re_i^2 + im_i^2, no square root.
RArrayF spectral_power(const CArrayF& y);

/// Applies every filter of the bank per the plan's algorithm. AOLS kinds
/// forward-transform the input chunks once and reuse the spectra across
/// filters; TOLS kinds recompute them per filter. The launch log follows
/// the per-kind kernel-launch accounting, with replicas grouping
/// ceil(M/P) filters per launch.
PlanResult run_plan(const CArrayF& x, const FilterBank& bank,
                    const ExecutionPlan& plan, int workers = 1);

}  // namespace ftconv
