#include "ftconv/costmodel.hpp"

#include <algorithm>
#include <cmath>

namespace ftconv {

double DeviceModel::available_bits_per_cycle(double f_max_mhz) const {
  if (f_max_mhz <= 0.0)
    throw std::invalid_argument("DeviceModel: f_max must be positive");
  const double rate_factor =
      std::min(static_cast<double>(quarter_rate_factor), bank_rate_mhz / f_max_mhz);
  return bank_count * bank_bus_width_bits * 2.0 * rate_factor;
}

FftDspEstimate fft_engine_dsp(const DeviceModel& device, Index n_ft, int pc) {
  const auto it = device.fft_dsp_table.find({n_ft, pc});
  if (it != device.fft_dsp_table.end()) return {it->second, false};
  if (!device.allow_fft_dsp_extrapolation)
    throw unsupported_configuration(
        "fft_engine_dsp: no table entry for n_ft=" + std::to_string(n_ft) +
        ", pc=" + std::to_string(pc));
  // Linear model anchored at the (1024, 8) -> 96 calibration point.
  const double blocks = 96.0 * (pc / 8.0) *
                        (std::log2(static_cast<double>(n_ft)) / 10.0);
  return {static_cast<int>(std::llround(blocks)), true};
}

int power_dsp(int points_per_cycle) { return 2 * points_per_cycle; }

WorkloadFlops workload_flops(PlanKind kind, double n, double taps,
                             double sub_filter_taps, double n_ft, int filters,
                             double c) {
  (void)filters;  // the average column is already per filter, M >> 1
  if (n < 1.0 || taps < 1.0)
    throw std::invalid_argument("workload_flops: n and taps must be positive");
  WorkloadFlops w;
  switch (kind) {
    case PlanKind::NaiveTD:
      w.single_filter = 8.0 * taps * n;
      w.avg_per_filter = w.single_filter;
      return w;
    case PlanKind::OlaTD: {
      if (sub_filter_taps < 1.0)
        throw std::invalid_argument("workload_flops: ola-td requires sub_filter_taps");
      const double r = std::ceil(taps / sub_filter_taps);
      w.single_filter = 8.0 * sub_filter_taps * n * r;
      w.avg_per_filter = w.single_filter;
      return w;
    }
    case PlanKind::NaiveFD:
      w.single_filter = n * (6.0 + 2.0 * c * std::log2(n));
      w.avg_per_filter = n * (6.0 + c * std::log2(n));
      return w;
    case PlanKind::Aols:
    case PlanKind::Tols: {
      if (n_ft <= taps)
        throw std::invalid_argument("workload_flops: n_ft must exceed taps");
      const double chunks = std::ceil(n / (n_ft - taps));
      w.single_filter = chunks * n_ft * (6.0 + 2.0 * c * std::log2(n_ft));
      w.avg_per_filter = chunks * n_ft * (6.0 + c * std::log2(n_ft));
      return w;
    }
  }
  throw std::invalid_argument("workload_flops: unknown kind");
}

double required_performance(double n, double taps, double filters,
                            double t_limit_seconds) {
  if (t_limit_seconds <= 0.0)
    throw std::invalid_argument("required_performance: t_limit must be positive");
  return 8.0 * n * taps * filters / t_limit_seconds;
}

long long launch_count(PlanKind kind, long long r, long long m, long long p) {
  if (r < 1 || m < 1 || p < 1)
    throw std::invalid_argument("launch_count: r, m, p must be >= 1");
  if (p > 1 && !is_ols_kind(kind))
    throw std::invalid_argument("launch_count: replicas only valid for overlap-save kinds");
  const long long groups = (m + p - 1) / p;
  switch (kind) {
    case PlanKind::NaiveTD:
    case PlanKind::OlaTD: return r * m;
    case PlanKind::NaiveFD: return m + 1;
    case PlanKind::Aols: return groups + 1;
    case PlanKind::Tols: return groups;
  }
  throw std::invalid_argument("launch_count: unknown kind");
}

long long cycles_per_launch(PlanKind kind, double n, Index taps, Index n_ft,
                            int n_ft_pc, long long r) {
  (void)r;
  switch (kind) {
    case PlanKind::NaiveTD:
    case PlanKind::OlaTD:
      return static_cast<long long>(std::llround(n));
    case PlanKind::NaiveFD:
      // The full-length transform is streamed; modeled at pc points/cycle.
      return static_cast<long long>(std::llround(n)) / n_ft_pc;
    case PlanKind::Aols:
    case PlanKind::Tols: {
      if (n_ft <= taps)
        throw std::invalid_argument("cycles_per_launch: n_ft must exceed taps");
      const long long chunks = static_cast<long long>(
          std::ceil(n / static_cast<double>(n_ft - taps)));
      return chunks * (n_ft / n_ft_pc);
    }
  }
  throw std::invalid_argument("cycles_per_launch: unknown kind");
}

int dsp_usage(const ExecutionPlan& plan, const DeviceModel& device) {
  switch (plan.kind) {
    case PlanKind::NaiveTD:
    case PlanKind::OlaTD: {
      const Index kprime = plan.sub_filter_taps > 0 ? plan.sub_filter_taps
                                                    : device.max_parallel_taps();
      return static_cast<int>(device.dsp_per_complex_mult * kprime);
    }
    case PlanKind::NaiveFD:
      throw unsupported_configuration(
          "dsp_usage: full-length transform engine is not modeled");
    case PlanKind::Aols:
    case PlanKind::Tols: {
      const auto fft = fft_engine_dsp(device, plan.n_ft, plan.n_ft_pc);
      const int engines = plan.kind == PlanKind::Tols ? 2 : 1;
      int per_replica = engines * fft.blocks +
                        device.dsp_per_complex_mult * plan.n_ft_pc;
      if (plan.power_output) per_replica += power_dsp(plan.n_ft_pc);
      return plan.replicas * per_replica;
    }
  }
  throw std::invalid_argument("dsp_usage: unknown kind");
}

double bandwidth_bits_per_cycle(const ExecutionPlan& plan) {
  constexpr double complex_bits = 64.0;  // complex SPF point
  constexpr double power_bits = 32.0;    // real SPF point
  if (!is_fd_kind(plan.kind)) {
    // One complex point loaded and one stored per cycle.
    return 2.0 * complex_bits;
  }
  const double pc = plan.n_ft_pc;
  const double store = plan.power_output ? power_bits : complex_bits;
  // Replicas share the input load stream; each drives its own store.
  return pc * complex_bits + plan.replicas * pc * store;
}

CostReport theoretical_latency(const ExecutionPlan& plan, double f_max_mhz,
                               double n, Index taps, int filters,
                               const DeviceModel& device) {
  if (f_max_mhz <= 0.0)
    throw std::invalid_argument("theoretical_latency: f_max must be positive");
  if (filters < 1)
    throw std::invalid_argument("theoretical_latency: filters must be >= 1");
  CostReport rep;
  rep.name = plan_kind_name(plan.kind);
  rep.plan = plan;
  rep.f_max_mhz = f_max_mhz;

  const Index kprime = plan.sub_filter_taps > 0 ? plan.sub_filter_taps
                                                : device.max_parallel_taps();
  const long long r =
      !is_fd_kind(plan.kind) ? (taps + kprime - 1) / kprime : 1;
  const long long p = plan.replicas;
  const long long d = plan.devices;
  const long long m = filters;

  rep.cycles_per_launch =
      cycles_per_launch(plan.kind, n, taps, plan.n_ft, plan.n_ft_pc, r);
  rep.launches = launch_count(plan.kind, r, m, p);

  const double ms_per_launch = static_cast<double>(rep.cycles_per_launch) /
                               (f_max_mhz * 1e3);
  long long steady_launches = 0;  // launches per device, forward pass excluded
  long long oneoff = 0;
  switch (plan.kind) {
    case PlanKind::NaiveTD:
    case PlanKind::OlaTD:
      steady_launches = ((m + d - 1) / d) * r;
      break;
    case PlanKind::NaiveFD:
      steady_launches = (m + d - 1) / d;
      oneoff = 1;
      break;
    case PlanKind::Aols:
      steady_launches = (m + p * d - 1) / (p * d);
      oneoff = 1;
      break;
    case PlanKind::Tols:
      steady_launches = (m + p * d - 1) / (p * d);
      break;
  }
  rep.latency_ms = static_cast<double>(steady_launches + oneoff) * ms_per_launch;
  rep.avg_latency_per_filter_ms =
      static_cast<double>(steady_launches) * ms_per_launch /
      static_cast<double>(m);

  const auto wl = workload_flops(plan.kind, n, static_cast<double>(taps),
                                 static_cast<double>(kprime),
                                 static_cast<double>(plan.n_ft), filters);
  rep.flops_single_filter = wl.single_filter;
  rep.flops_avg_per_filter = wl.avg_per_filter;

  try {
    rep.dsp_used = dsp_usage(plan, device);
    if (is_ols_kind(plan.kind))
      rep.dsp_extrapolated =
          fft_engine_dsp(device, plan.n_ft, plan.n_ft_pc).extrapolated;
  } catch (const unsupported_configuration&) {
    rep.dsp_used = 0;
    rep.notes.push_back("dsp usage not modeled for this kind");
  }
  rep.dsp_fraction = static_cast<double>(rep.dsp_used) / device.n_dsp;
  rep.bandwidth_bits_per_cycle = bandwidth_bits_per_cycle(plan);
  rep.feasible = rep.dsp_used <= device.n_dsp &&
                 rep.bandwidth_bits_per_cycle <=
                     device.available_bits_per_cycle(f_max_mhz);
  if (rep.dsp_extrapolated)
    rep.notes.push_back("fft engine dsp count extrapolated from the (1024,8) point");
  if (plan.power_output)
    rep.notes.push_back("power stage modeled at 2 dsp blocks per point per cycle");
  return rep;
}

std::vector<CostReport> sweep(const DeviceModel& device,
                              const std::vector<PlanCandidate>& candidates,
                              double n, Index taps, int filters) {
  if (candidates.empty())
    throw std::invalid_argument("sweep: empty candidate set");
  std::vector<CostReport> reports;
  reports.reserve(candidates.size());
  for (const auto& cand : candidates) {
    CostReport rep = theoretical_latency(cand.plan, cand.f_max_mhz, n, taps,
                                         filters, device);
    rep.name = cand.name;
    if (cand.published_latency_ms) {
      const double model = cand.plan.power_output
                               ? rep.avg_latency_per_filter_ms
                               : rep.latency_ms;
      const double pub = *cand.published_latency_ms;
      if (std::abs(model - pub) / pub > 0.01) {
        rep.notes.push_back("model " + std::to_string(model) +
                            " ms deviates from published " +
                            std::to_string(pub) + " ms");
      }
    }
    reports.push_back(std::move(rep));
  }
  std::sort(reports.begin(), reports.end(),
            [filters](const CostReport& a, const CostReport& b) {
              if (a.feasible != b.feasible) return a.feasible;
              const double la = a.latency_ms / filters;
              const double lb = b.latency_ms / filters;
              if (la != lb) return la < lb;
              return a.dsp_fraction < b.dsp_fraction;
            });
  return reports;
}

namespace {

PlanCandidate td(const std::string& name, PlanKind kind, Index kprime,
                 double f_max, double published) {
  ExecutionPlan plan;
  plan.kind = kind;
  plan.sub_filter_taps = kprime;
  PlanCandidate c{name, plan, f_max, published};
  return c;
}

PlanCandidate ols(const std::string& name, PlanKind kind, Index n_ft, int pc,
                  int replicas, bool power, double f_max,
                  std::optional<double> published) {
  ExecutionPlan plan;
  plan.kind = kind;
  plan.n_ft = n_ft;
  plan.n_ft_pc = pc;
  plan.replicas = replicas;
  plan.power_output = power;
  PlanCandidate c{name, plan, f_max, published};
  return c;
}

}  // namespace

std::vector<PlanCandidate> single_filter_fd_catalog() {
  return {
      ols("AOLS-1024", PlanKind::Aols, 1024, 8, 1, false, 222.17, 7.98),
      ols("AOLS-2048", PlanKind::Aols, 2048, 8, 1, false, 205.59, 6.41),
      ols("AOLS-4096", PlanKind::Aols, 4096, 8, 1, false, 173.97, 6.72),
      ols("TOLS-1024", PlanKind::Tols, 1024, 8, 1, false, 168.26, 5.27),
  };
}

std::vector<PlanCandidate> replicated_power_catalog() {
  return {
      ols("2xAOLS-1024-P", PlanKind::Aols, 1024, 4, 2, true, 216.35, 4.12),
      ols("3xAOLS-1024-P", PlanKind::Aols, 1024, 4, 3, true, 214.27, 2.77),
      ols("2xAOLS-2048-P", PlanKind::Aols, 2048, 4, 2, true, 220.21, 3.00),
      ols("3xAOLS-2048-P", PlanKind::Aols, 2048, 4, 3, true, 205.68, 2.14),
      ols("2xAOLS-4096-P", PlanKind::Aols, 4096, 4, 2, true, 182.68, 4.56),
      ols("3xAOLS-4096-P", PlanKind::Aols, 4096, 4, 3, true, 177.24, 3.13),
  };
}

std::vector<PlanCandidate> default_plan_catalog() {
  std::vector<PlanCandidate> all = {
      td("TD-Naive-64S", PlanKind::NaiveTD, 64, 254.77, 115.24),
      td("TD-Naive-64N", PlanKind::NaiveTD, 64, 270.05, 108.72),
      td("OLA-64S", PlanKind::OlaTD, 64, 236.01, 124.40),
      td("OLA-64N", PlanKind::OlaTD, 64, 255.29, 115.01),
      ols("FD-Naive", PlanKind::NaiveFD, 2048, 8, 1, false, 183.55, std::nullopt),
  };
  for (auto& c : single_filter_fd_catalog()) all.push_back(std::move(c));
  for (auto& c : replicated_power_catalog()) all.push_back(std::move(c));
  return all;
}

}  // namespace ftconv
