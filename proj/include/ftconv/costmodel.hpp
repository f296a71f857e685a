#pragma once

#include <map>
#include <optional>
#include <string>

#include "ftconv/fdfir.hpp"

namespace ftconv {

/// Abstract accelerator resource description. The defaults encode the
/// 256-DSP board with two 64-bit DDR banks the latency and resource
/// reference numbers were derived on.
struct DeviceModel {
  int n_dsp = 256;
  int dsp_per_complex_mult = 4;
  int bank_count = 2;
  int bank_bus_width_bits = 64;
  double bank_rate_mhz = 800.0;  // double data rate implied
  int quarter_rate_factor = 4;
  /// Exact DSP cost of the FFT engine per (n_ft, points_per_cycle);
  /// other entries are extrapolated from the linear model when allowed.
  std::map<std::pair<Index, int>, int> fft_dsp_table = {{{1024, 8}, 96}};
  bool allow_fft_dsp_extrapolation = true;

  /// K' = floor(N_DSP / blocks-per-complex-multiply).
  Index max_parallel_taps() const { return n_dsp / dsp_per_complex_mult; }

  /// Off-chip bits deliverable per kernel clock cycle at f_max; the
  /// memory controller rate is capped at quarter_rate_factor times the
  /// kernel clock.
  double available_bits_per_cycle(double f_max_mhz) const;
};

struct FftDspEstimate {
  int blocks = 0;
  bool extrapolated = false;
};

FftDspEstimate fft_engine_dsp(const DeviceModel& device, Index n_ft, int pc);

/// DSP blocks for the spectral-power stage: two per point per cycle
/// (re^2 + im^2). Calibrated so three replicated 1024-point power
/// pipelines land at ~85% of a 256-block device.
int power_dsp(int points_per_cycle);

struct WorkloadFlops {
  double single_filter = 0.0;
  double avg_per_filter = 0.0;  // M filters, forward pass amortized
};

/// Operation counts per the workload table. Complex multiply counts 6
/// ops standalone and 8 inside a time-domain accumulation. C is the
/// FFT-algorithm constant (5 for the radix-4 engine).
WorkloadFlops workload_flops(PlanKind kind, double n, double taps,
                             double sub_filter_taps, double n_ft, int filters,
                             double c = 5.0);

/// 8NKM / t_limit, in FLOPS.
double required_performance(double n, double taps, double filters,
                            double t_limit_seconds);

/// Kernel-launch accounting: TD kinds R*M, NaiveFD/AOLS ceil(M/P)+1,
/// TOLS ceil(M/P).
long long launch_count(PlanKind kind, long long r, long long m, long long p = 1);

long long cycles_per_launch(PlanKind kind, double n, Index taps, Index n_ft,
                            int n_ft_pc, long long r);

struct CostReport {
  std::string name;
  ExecutionPlan plan;
  double f_max_mhz = 0.0;
  double flops_single_filter = 0.0;
  double flops_avg_per_filter = 0.0;
  long long launches = 0;
  long long cycles_per_launch = 0;
  double latency_ms = 0.0;                 // M filters, forward pass included
  double avg_latency_per_filter_ms = 0.0;  // steady state, forward excluded
  int dsp_used = 0;
  double dsp_fraction = 0.0;
  bool dsp_extrapolated = false;
  double bandwidth_bits_per_cycle = 0.0;
  bool feasible = false;
  std::vector<std::string> notes;
};

int dsp_usage(const ExecutionPlan& plan, const DeviceModel& device);

double bandwidth_bits_per_cycle(const ExecutionPlan& plan);

CostReport theoretical_latency(const ExecutionPlan& plan, double f_max_mhz,
                               double n, Index taps, int filters,
                               const DeviceModel& device);

struct PlanCandidate {
  std::string name;
  ExecutionPlan plan;
  double f_max_mhz = 0.0;
  /// Published reference latency, when one exists; used only to flag
  /// discrepancies in reports, never to tune the model.
  std::optional<double> published_latency_ms;
};

/// Reports sorted by per-filter total latency (latency_ms / M);
/// infeasible plans last, ties broken by lower DSP fraction.
std::vector<CostReport> sweep(const DeviceModel& device,
                              const std::vector<PlanCandidate>& candidates,
                              double n, Index taps, int filters);

/// The shipped plan set: the single-filter kernels with their measured
/// f_max values, and the replicated power-output variants.
std::vector<PlanCandidate> default_plan_catalog();

std::vector<PlanCandidate> single_filter_fd_catalog();
std::vector<PlanCandidate> replicated_power_catalog();

}  // namespace ftconv
