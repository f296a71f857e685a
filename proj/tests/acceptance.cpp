// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure. Tolerances are pinned here, not configurable.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "ftconv/costmodel.hpp"
#include "ftconv/fdfir.hpp"
#include "ftconv/tdfir.hpp"

using namespace ftconv;

namespace {

constexpr double kOracleTol = 1e-5;
constexpr double kModelTol = 0.01;        // 1% on published latencies
constexpr double kFftRoundTripTol = 1e-5;
constexpr double kFftOracleTol = 1e-6;
constexpr double kTflopsTol = 0.01;       // absolute, in TFLOPS

int failures = 0;

void report(int criterion, const char* what, bool pass,
            const std::string& detail = "") {
  std::printf("criterion %2d  %-52s %s%s%s\n", criterion, what,
              pass ? "PASS" : "FAIL", detail.empty() ? "" : "  -- ",
              detail.c_str());
  if (!pass) ++failures;
}

double oracle_error(const CArrayF& test, const CArrayD& ref) {
  return rrmse(test, ref).rrmse;
}

// --- 1. oracle equivalence over the full parameter grid -------------------

struct GridCase {
  std::uint64_t seed;
  Index n, taps, filters;
};

void criterion_oracle_grid() {
  std::vector<GridCase> grid;
  for (const std::uint64_t seed : {1ull, 2ull, 3ull})
    for (const Index n : {Index(4096), Index(16384), Index(65536)})
      for (const Index taps : {Index(64), Index(128), Index(256), Index(421)})
        for (const Index filters : {Index(1), Index(8)})
          grid.push_back({seed, n, taps, filters});

  std::atomic<std::size_t> next{0};
  std::atomic<bool> ok{true};
  std::mutex mu;
  double worst = 0.0;
  std::string worst_case;

  const auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= grid.size()) return;
      const GridCase& gc = grid[idx];
      const CArrayF x = generate_signal(gc.seed, gc.n);
      const CArrayD xd = widen(x);
      const FilterBank bank = generate_bank(gc.seed + 100, gc.filters, gc.taps);
      for (Index f = 0; f < gc.filters; ++f) {
        const CArrayF& h = bank.templates[static_cast<std::size_t>(f)];
        const CArrayD ref = conv_oracle(xd, widen(h));
        std::vector<std::pair<const char*, CArrayF>> outs;
        outs.emplace_back("naive-td", conv_naive_td(x, h));
        outs.emplace_back("ola-td", conv_ola_td(x, h, OlaConfig{64}));
        outs.emplace_back("naive-fd", conv_naive_fd(x, h));
        for (const Index n_ft : {Index(1024), Index(2048), Index(4096)}) {
          const FftPlan plan{n_ft, 8, FftOrdering::BitReversed};
          outs.emplace_back("ols", conv_ols_fd(x, prepare_template(h, plan),
                                               plan));
        }
        for (const auto& [name, y] : outs) {
          const double err = oracle_error(y, ref);
          std::lock_guard<std::mutex> lock(mu);
          if (err > worst) {
            worst = err;
            worst_case = std::string(name) + " seed=" +
                         std::to_string(gc.seed) +
                         " n=" + std::to_string(gc.n) +
                         " taps=" + std::to_string(gc.taps);
          }
          if (err >= kOracleTol) ok = false;
        }
      }
    }
  };

  const unsigned nthreads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  char detail[160];
  std::snprintf(detail, sizeof(detail), "worst rrmse %.3e (%s)", worst,
                worst_case.c_str());
  report(1, "all algorithms match the oracle across the grid", ok, detail);
}

// --- 2. launch-count table ------------------------------------------------

void criterion_launch_table() {
  bool ok = true;
  for (long long r = 1; r <= 10 && ok; ++r) {
    ok = ok && launch_count(PlanKind::NaiveTD, r, 1) == r &&
         launch_count(PlanKind::OlaTD, r, 1) == r &&
         launch_count(PlanKind::NaiveFD, r, 1) == 2 &&
         launch_count(PlanKind::Aols, r, 1) == 2 &&
         launch_count(PlanKind::Tols, r, 1) == 1;
    for (long long m = 1; m <= 100 && ok; ++m) {
      ok = ok && launch_count(PlanKind::NaiveTD, r, m) == r * m &&
           launch_count(PlanKind::OlaTD, r, m) == r * m &&
           launch_count(PlanKind::NaiveFD, r, m) == m + 1 &&
           launch_count(PlanKind::Aols, r, m) == m + 1 &&
           launch_count(PlanKind::Tols, r, m) == m;
    }
  }

  // Executed plans must log the same counts.
  const CArrayF x = generate_signal(1, 4096);
  const FilterBank bank = generate_bank(2, 6, 421);
  ExecutionPlan ola;
  ola.kind = PlanKind::OlaTD;
  ola.sub_filter_taps = 64;  // R = 7
  ExecutionPlan naive_td;
  naive_td.kind = PlanKind::NaiveTD;
  naive_td.sub_filter_taps = 64;
  ExecutionPlan aols;
  aols.kind = PlanKind::Aols;
  aols.n_ft = 2048;
  ExecutionPlan tols = aols;
  tols.kind = PlanKind::Tols;
  ExecutionPlan naive_fd = aols;
  naive_fd.kind = PlanKind::NaiveFD;
  ok = ok && run_plan(x, bank, ola, 4).log.launches ==
                 launch_count(PlanKind::OlaTD, 7, 6) &&
       run_plan(x, bank, naive_td, 4).log.launches ==
           launch_count(PlanKind::NaiveTD, 7, 6) &&
       run_plan(x, bank, aols, 4).log.launches ==
           launch_count(PlanKind::Aols, 7, 6) &&
       run_plan(x, bank, tols, 4).log.launches ==
           launch_count(PlanKind::Tols, 7, 6) &&
       run_plan(x, bank, naive_fd, 4).log.launches ==
           launch_count(PlanKind::NaiveFD, 7, 6);
  report(2, "launch counts reproduce the published table", ok);
}

// --- 3./4. published latency reproduction ---------------------------------

const PlanCandidate* find(const std::vector<PlanCandidate>& set,
                          const std::string& name) {
  for (const auto& cand : set)
    if (cand.name == name) return &cand;
  return nullptr;
}

void criterion_single_filter_latencies() {
  const DeviceModel device;
  const auto catalog = default_plan_catalog();
  const struct {
    const char* name;
    double ms;
  } rows[] = {{"TD-Naive-64S", 115.24}, {"OLA-64N", 115.01},
              {"AOLS-1024", 7.98},      {"AOLS-2048", 6.41},
              {"AOLS-4096", 6.72},      {"TOLS-1024", 5.27}};
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    const PlanCandidate* cand = find(catalog, row.name);
    if (!cand) {
      ok = false;
      continue;
    }
    const CostReport rep = theoretical_latency(cand->plan, cand->f_max_mhz,
                                               4194304.0, 421, 1, device);
    const double dev = std::abs(rep.latency_ms - row.ms) / row.ms;
    if (dev >= kModelTol) {
      ok = false;
      detail += std::string(row.name) + " off by " + std::to_string(dev) + "; ";
    }
  }
  report(3, "single-filter model latencies within 1%", ok, detail);
}

void criterion_replicated_latencies() {
  const DeviceModel device;
  const auto catalog = replicated_power_catalog();
  const struct {
    const char* name;
    double ms;
  } rows[] = {{"2xAOLS-1024-P", 4.12},
              {"3xAOLS-1024-P", 2.77},
              {"2xAOLS-2048-P", 3.00},
              {"3xAOLS-2048-P", 2.14}};
  bool ok = true;
  for (const auto& row : rows) {
    const PlanCandidate* cand = find(catalog, row.name);
    if (!cand) {
      ok = false;
      continue;
    }
    const CostReport rep = theoretical_latency(cand->plan, cand->f_max_mhz,
                                               4194304.0, 421, 84, device);
    ok = ok && std::abs(rep.avg_latency_per_filter_ms - row.ms) / row.ms <
                   kModelTol;
  }
  // The 4096 rows are excluded by design; confirm the sweep flags them as
  // deviating rather than silently matching.
  std::string note;
  for (const auto& rep :
       sweep(device, catalog, 4194304.0, 421, 84)) {
    if (rep.name.find("4096") == std::string::npos) continue;
    bool flagged = false;
    for (const auto& n : rep.notes)
      if (n.find("deviates") != std::string::npos) flagged = true;
    if (!flagged) {
      ok = false;
      note += rep.name + " not flagged; ";
    }
  }
  report(4, "replicated per-filter latencies within 1% (4096 flagged)", ok,
         note);
}

// --- 5. required performance ----------------------------------------------

void criterion_required_performance() {
  const double tflops =
      required_performance(4194304.0, 421.0, 84.0, 0.0895) / 1e12;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "computed %.4f TFLOPS", tflops);
  report(5, "required performance equals 13.26 TFLOPS",
         std::abs(tflops - 13.26) < kTflopsTol, detail);
}

// --- 6. resource numbers --------------------------------------------------

void criterion_resources() {
  const DeviceModel device;
  ExecutionPlan aols;
  aols.kind = PlanKind::Aols;
  aols.n_ft = 1024;
  ExecutionPlan tols = aols;
  tols.kind = PlanKind::Tols;
  ExecutionPlan two_aols = aols;
  two_aols.replicas = 2;
  ExecutionPlan three_power = aols;
  three_power.n_ft_pc = 4;
  three_power.replicas = 3;
  three_power.power_output = true;
  const bool ok = dsp_usage(aols, device) == 128 &&
                  dsp_usage(tols, device) == 224 &&
                  device.max_parallel_taps() == 64 &&
                  bandwidth_bits_per_cycle(tols) == 1024.0 &&
                  bandwidth_bits_per_cycle(two_aols) == 1536.0 &&
                  bandwidth_bits_per_cycle(three_power) == 640.0;
  report(6, "DSP and bandwidth budgets match the quoted values", ok);
}

// --- 7. sweep rankings ----------------------------------------------------

void criterion_rankings() {
  const DeviceModel device;
  const auto single = sweep(device, single_filter_fd_catalog(), 4194304.0,
                            421, 1);
  bool ok = !single.empty() && single.front().name == "TOLS-1024";

  std::vector<PlanCandidate> small_chunks;
  for (auto& cand : replicated_power_catalog())
    if (cand.plan.n_ft <= 2048) small_chunks.push_back(std::move(cand));
  const auto replicated = sweep(device, small_chunks, 4194304.0, 421, 84);
  ok = ok && !replicated.empty() && replicated.front().name == "3xAOLS-2048-P";
  report(7, "sweep ranks TOLS-1024 and 3xAOLS-2048-P first", ok);
}

// --- 8. workload ordering -------------------------------------------------

void criterion_workload_ordering() {
  bool ok = true;
  const auto ola = workload_flops(PlanKind::OlaTD, 4194304.0, 421.0, 64.0, 0, 2);
  for (const double n_ft : {1024.0, 2048.0, 4096.0}) {
    const auto ols =
        workload_flops(PlanKind::Aols, 4194304.0, 421.0, 0, n_ft, 2);
    ok = ok && ols.avg_per_filter < ola.avg_per_filter;
  }
  report(8, "average OLS workload beats overlap-add per filter", ok);
}

// --- 9. end-to-end FOP run ------------------------------------------------

void criterion_end_to_end() {
  const Index n = 1 << 18;
  const CArrayF x = generate_signal(1, n);
  const FilterBank bank = generate_bank(2, 84, 421);
  ExecutionPlan plan;
  plan.kind = PlanKind::Aols;
  plan.n_ft = 2048;
  plan.n_ft_pc = 4;
  plan.replicas = 3;
  plan.power_output = true;

  const auto t0 = std::chrono::steady_clock::now();
  const PlanResult result = run_plan(
      x, bank, plan,
      static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  bool ok = seconds < 60.0;
  ok = ok && result.fop.row_count() == 85 && result.fop.cols() == n;
  for (const auto& row : result.fop.rows)
    for (Index i = 0; i < row.size(); ++i)
      if (!(row[i] >= 0.0f)) ok = false;

  const RArrayF row0 = spectral_power(x);
  for (Index i = 0; i < n; ++i)
    if (result.fop.rows[0][i] != row0[i]) ok = false;

  // Five deterministic pseudo-random rows checked against the oracle.
  XorShift64Star picker(2024);
  const CArrayD xd = widen(x);
  double worst = 0.0;
  for (int s = 0; s < 5; ++s) {
    const Index f = static_cast<Index>(picker.next_u64() % 84);
    const CArrayD ref =
        conv_oracle(xd, widen(bank.templates[static_cast<std::size_t>(f)]));
    const RArrayF& row = result.fop.rows[static_cast<std::size_t>(f) + 1];
    double num = 0.0, den = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double e = static_cast<double>(row[i]) - std::norm(ref[i]);
      num += e * e;
      den += std::norm(ref[i]) * std::norm(ref[i]);
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  ok = ok && worst < kOracleTol;

  char detail[96];
  std::snprintf(detail, sizeof(detail), "%.2f s compute, worst row rrmse %.3e",
                seconds, worst);
  report(9, "full-scale FOP run verifies in time", ok, detail);
}

// --- 10. FFT correctness --------------------------------------------------

void criterion_fft() {
  bool ok = true;
  double worst_rt = 0.0, worst_oracle = 0.0;
  for (const Index n : {Index(8), Index(64), Index(1024), Index(2048),
                        Index(4096)}) {
    const CArrayF x = generate_signal(300 + n, n);
    for (const auto ordering : {FftOrdering::Natural, FftOrdering::BitReversed}) {
      const FftPlan plan{n, 8, ordering};
      const CArrayF back = fft(fft(x, plan, FftDirection::Forward), plan,
                               FftDirection::Inverse);
      double max_err = 0.0, max_mag = 0.0;
      for (Index i = 0; i < n; ++i) {
        max_err = std::max(max_err,
                           static_cast<double>(std::abs(back[i] - x[i])));
        max_mag = std::max(max_mag, static_cast<double>(std::abs(x[i])));
      }
      worst_rt = std::max(worst_rt, max_err / max_mag);
    }
    const FftPlan nat{n, 8, FftOrdering::Natural};
    worst_oracle = std::max(
        worst_oracle,
        rrmse(fft(x, nat, FftDirection::Forward), dft_oracle(widen(x))).rrmse);
    const CArrayF twice = bit_reverse_permute(bit_reverse_permute(x));
    for (Index i = 0; i < n; ++i)
      if (twice[i] != x[i]) ok = false;
  }
  ok = ok && worst_rt < kFftRoundTripTol && worst_oracle < kFftOracleTol;
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "round-trip %.3e, vs oracle %.3e", worst_rt, worst_oracle);
  report(10, "FFT round-trip, involution, and oracle match", ok, detail);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_oracle_grid();
  criterion_launch_table();
  criterion_single_filter_latencies();
  criterion_replicated_latencies();
  criterion_required_performance();
  criterion_resources();
  criterion_rankings();
  criterion_workload_ordering();
  criterion_end_to_end();
  criterion_fft();
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("%d of 10 criteria passed in %.1f s\n", 10 - failures, seconds);
  return failures == 0 ? 0 : 1;
}
