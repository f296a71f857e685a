// Command-line harness: deterministic data generation, conv/FOP runs,
// oracle verification, wall-clock benchmarking, and cost-model reports.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "ftconv/costmodel.hpp"
#include "ftconv/fdfir.hpp"
#include "ftconv/io.hpp"
#include "ftconv/tdfir.hpp"

namespace {

using namespace ftconv;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIo = 3;

constexpr double kVerifyThreshold = 1e-5;

struct RunConfig {
  std::string in_path;       // empty -> generated
  std::string bank_path;     // empty -> generated
  Index input_len = 1 << 14;
  std::uint64_t seed = 1;
  Index filters = 1;
  Index taps = 421;
  std::string plan_name = "aols";
  Index n_ft = 2048;
  int n_ft_pc = 8;
  Index kprime = 64;
  int replicas = 1;
  int devices = 1;
  bool power = false;
  int workers = 1;
  int reps = 5;
  std::string out_path;
  std::string csv_path;
  std::string device_model_path;
  double f_max = 0.0;  // 0 -> catalog default
};

void add_data_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--in", cfg.in_path, "input .cf32 file (default: generated)");
  cmd->add_option("--input", cfg.input_len, "generated input length N");
  cmd->add_option("--seed", cfg.seed, "generator seed (bank stream uses seed+1)");
  cmd->add_option("--bank", cfg.bank_path, "bank .cf32 file of M*K taps");
  cmd->add_option("--filters", cfg.filters, "number of filters M");
  cmd->add_option("--taps", cfg.taps, "taps per filter K");
}

void add_plan_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--plan", cfg.plan_name,
                  "naive-td | ola-td | naive-fd | aols | tols");
  cmd->add_option("--nft", cfg.n_ft, "transform length N_FT");
  cmd->add_option("--pc", cfg.n_ft_pc, "points per cycle (4 or 8)");
  cmd->add_option("--kprime", cfg.kprime, "sub-filter taps K'");
  cmd->add_option("--replicas", cfg.replicas, "replicated pipelines P");
  cmd->add_option("--devices", cfg.devices, "device count D");
  cmd->add_option("--workers", cfg.workers, "worker threads");
}

ExecutionPlan build_plan(const RunConfig& cfg) {
  ExecutionPlan plan;
  plan.kind = plan_kind_from_name(cfg.plan_name);
  plan.sub_filter_taps = is_fd_kind(plan.kind) ? 0 : cfg.kprime;
  plan.n_ft = cfg.n_ft;
  plan.n_ft_pc = cfg.n_ft_pc;
  plan.replicas = cfg.replicas;
  plan.devices = cfg.devices;
  plan.power_output = cfg.power;
  return plan;
}

CArrayF load_input(const RunConfig& cfg) {
  if (!cfg.in_path.empty()) return read_cf32(cfg.in_path);
  return generate_signal(cfg.seed, cfg.input_len);
}

FilterBank load_bank(const RunConfig& cfg) {
  if (!cfg.bank_path.empty())
    return read_bank_cf32(cfg.bank_path, cfg.filters, cfg.taps);
  return generate_bank(cfg.seed + 1, cfg.filters, cfg.taps);
}

DeviceModel load_device(const RunConfig& cfg) {
  if (!cfg.device_model_path.empty())
    return load_device_model(cfg.device_model_path);
  return DeviceModel{};
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

ErrorReport power_row_error(const RArrayF& row, const CArrayD& reference) {
  CArrayF as_complex(row.size());
  CArrayD ref_power(reference.size());
  for (Index i = 0; i < row.size(); ++i) {
    as_complex[i] = std::complex<float>(row[i], 0.0f);
    ref_power[i] = std::complex<double>(std::norm(reference[i]), 0.0);
  }
  return rrmse(as_complex, ref_power);
}

int cmd_gen(const RunConfig& cfg, bool bank_mode) {
  if (cfg.out_path.empty()) {
    std::cerr << "gen: --out is required\n";
    return kExitUsage;
  }
  if (bank_mode) {
    const FilterBank bank = generate_bank(cfg.seed + 1, cfg.filters, cfg.taps);
    CArrayF flat(cfg.filters * cfg.taps);
    for (Index m = 0; m < cfg.filters; ++m)
      flat.segment(m * cfg.taps, cfg.taps) =
          bank.templates[static_cast<std::size_t>(m)];
    write_cf32(cfg.out_path, flat);
    std::cout << "wrote bank: " << cfg.filters << " x " << cfg.taps
              << " taps, seed " << cfg.seed + 1 << " -> " << cfg.out_path << "\n";
  } else {
    write_cf32(cfg.out_path, generate_signal(cfg.seed, cfg.input_len));
    std::cout << "wrote signal: N=" << cfg.input_len << ", seed " << cfg.seed
              << " -> " << cfg.out_path << "\n";
  }
  return kExitOk;
}

int cmd_conv(RunConfig cfg) {
  if (cfg.bank_path.empty()) cfg.filters = 1;
  const CArrayF x = load_input(cfg);
  FilterBank bank = load_bank(cfg);
  if (bank.count() > 1) {
    std::vector<CArrayF> first{bank.templates.front()};
    bank = make_filter_bank(std::move(first));
  }
  const ExecutionPlan plan = build_plan(cfg);
  const PlanResult result = run_plan(x, bank, plan, cfg.workers);
  if (!cfg.out_path.empty()) write_cf32(cfg.out_path, result.outputs.front());
  std::cout << "plan " << plan_kind_name(plan.kind) << ": N=" << x.size()
            << " K=" << bank.max_taps << " launches=" << result.log.launches
            << (cfg.out_path.empty() ? "" : " -> " + cfg.out_path) << "\n";
  return kExitOk;
}

int cmd_fop(RunConfig cfg) {
  cfg.power = true;
  const CArrayF x = load_input(cfg);
  const FilterBank bank = load_bank(cfg);
  const ExecutionPlan plan = build_plan(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const PlanResult result = run_plan(x, bank, plan, cfg.workers);
  const double ms = elapsed_ms(t0);
  if (!cfg.out_path.empty()) write_fop(cfg.out_path, result.fop);
  if (!cfg.csv_path.empty()) write_fop_csv(cfg.csv_path, result.fop);
  std::cout << "fop: " << result.fop.row_count() << " x " << result.fop.cols()
            << ", launches=" << result.log.launches << ", compute " << ms
            << " ms" << (cfg.out_path.empty() ? "" : " -> " + cfg.out_path)
            << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const CArrayF x = load_input(cfg);
  const FilterBank bank = load_bank(cfg);
  const ExecutionPlan plan = build_plan(cfg);
  const PlanResult result = run_plan(x, bank, plan, cfg.workers);

  const CArrayD xd = widen(x);
  bool ok = true;
  std::printf("# seed=%llu plan=%s N=%lld M=%lld K=%lld\n",
              static_cast<unsigned long long>(cfg.seed),
              plan_kind_name(plan.kind), static_cast<long long>(x.size()),
              static_cast<long long>(bank.count()),
              static_cast<long long>(bank.max_taps));
  for (Index m = 0; m < bank.count(); ++m) {
    const CArrayD ref =
        conv_oracle(xd, widen(bank.templates[static_cast<std::size_t>(m)]));
    const ErrorReport err =
        plan.power_output
            ? power_row_error(result.fop.rows[static_cast<std::size_t>(m) + 1], ref)
            : rrmse(result.outputs[static_cast<std::size_t>(m)], ref);
    const bool pass = err.rrmse < kVerifyThreshold;
    ok = ok && pass;
    std::printf("filter %3lld  rrmse %.3e  max-abs %.3e  %s\n",
                static_cast<long long>(m + 1), err.rrmse, err.max_abs_err,
                pass ? "ok" : "FAIL");
  }
  return ok ? kExitOk : kExitVerify;
}

int cmd_bench(const RunConfig& cfg, bool sweep_filters) {
  const CArrayF x = load_input(cfg);
  const DeviceModel device = load_device(cfg);
  (void)device;

  FILE* csv = nullptr;
  if (!cfg.csv_path.empty()) {
    csv = std::fopen(cfg.csv_path.c_str(), "w");
    if (!csv) throw std::runtime_error("cannot open for writing: " + cfg.csv_path);
    std::fprintf(csv, "plan,n,taps,filters,launches,latency_ms,"
                      "avg_ms_per_filter,gflops,seed,workers\n");
  }

  const Index m_max = cfg.filters;
  std::printf("# bench seed=%llu N=%lld K=%lld workers=%d reps=%d\n",
              static_cast<unsigned long long>(cfg.seed),
              static_cast<long long>(x.size()), static_cast<long long>(cfg.taps),
              cfg.workers, cfg.reps);
  for (Index m = sweep_filters ? 1 : m_max; m <= m_max; ++m) {
    RunConfig run_cfg = cfg;
    run_cfg.filters = m;
    const FilterBank bank = load_bank(run_cfg);
    const ExecutionPlan plan = build_plan(run_cfg);

    run_plan(x, bank, plan, cfg.workers);  // warmup
    std::vector<double> times;
    LaunchLog log;
    for (int rep = 0; rep < cfg.reps; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const PlanResult result = run_plan(x, bank, plan, cfg.workers);
      times.push_back(elapsed_ms(t0));
      log = result.log;
    }
    std::sort(times.begin(), times.end());
    const double median_ms = times[times.size() / 2];

    const Index kprime = plan.sub_filter_taps > 0 ? plan.sub_filter_taps
                                                  : bank.max_taps;
    const auto wl = workload_flops(plan.kind, static_cast<double>(x.size()),
                                   static_cast<double>(bank.max_taps),
                                   static_cast<double>(kprime),
                                   static_cast<double>(plan.n_ft),
                                   static_cast<int>(m));
    const double total_flops =
        m == 1 ? wl.single_filter : wl.avg_per_filter * static_cast<double>(m);
    const double gflops = total_flops / (median_ms * 1e6);
    std::printf("%-9s M=%3lld  latency %10.3f ms  avg %8.3f ms/filter  "
                "%8.2f GFLOPS (%s-domain op count)  launches %lld\n",
                plan_kind_name(plan.kind), static_cast<long long>(m), median_ms,
                median_ms / static_cast<double>(m), gflops,
                is_fd_kind(plan.kind) ? "frequency" : "time", log.launches);
    if (csv)
      std::fprintf(csv, "%s,%lld,%lld,%lld,%lld,%.6f,%.6f,%.4f,%llu,%d\n",
                   plan_kind_name(plan.kind), static_cast<long long>(x.size()),
                   static_cast<long long>(bank.max_taps),
                   static_cast<long long>(m), log.launches, median_ms,
                   median_ms / static_cast<double>(m), gflops,
                   static_cast<unsigned long long>(cfg.seed), cfg.workers);
  }
  if (csv) std::fclose(csv);
  std::printf("# GFLOPS values use each algorithm's own operation count; "
              "time- and frequency-domain rows are not comparable.\n");
  return kExitOk;
}

void print_reports(const std::vector<CostReport>& reports, Index filters,
                   const std::string& csv_path) {
  std::printf("%-16s %9s %8s %12s %12s %6s %6s %10s %s\n", "plan", "f_max",
              "launches", "latency_ms", "avg_ms/filt", "dsp", "dsp%", "bw_bits",
              "feasible");
  for (const auto& rep : reports) {
    std::printf("%-16s %9.2f %8lld %12.4f %12.4f %6d %5.0f%% %10.0f %s\n",
                rep.name.c_str(), rep.f_max_mhz, rep.launches, rep.latency_ms,
                rep.avg_latency_per_filter_ms, rep.dsp_used,
                100.0 * rep.dsp_fraction, rep.bandwidth_bits_per_cycle,
                rep.feasible ? "yes" : "NO");
    for (const auto& note : rep.notes)
      std::printf("    note: %s\n", note.c_str());
  }
  if (!csv_path.empty()) {
    FILE* csv = std::fopen(csv_path.c_str(), "w");
    if (!csv) throw std::runtime_error("cannot open for writing: " + csv_path);
    std::fprintf(csv, "plan,f_max_mhz,filters,launches,cycles_per_launch,"
                      "latency_ms,avg_ms_per_filter,dsp,dsp_fraction,"
                      "bandwidth_bits_per_cycle,feasible\n");
    for (const auto& rep : reports)
      std::fprintf(csv, "%s,%.2f,%lld,%lld,%lld,%.6f,%.6f,%d,%.4f,%.0f,%d\n",
                   rep.name.c_str(), rep.f_max_mhz,
                   static_cast<long long>(filters), rep.launches,
                   rep.cycles_per_launch, rep.latency_ms,
                   rep.avg_latency_per_filter_ms, rep.dsp_used,
                   rep.dsp_fraction, rep.bandwidth_bits_per_cycle,
                   rep.feasible ? 1 : 0);
    std::fclose(csv);
  }
}

std::vector<PlanCandidate> select_catalog(const std::string& set) {
  if (set == "all") return default_plan_catalog();
  if (set == "fd-single") return single_filter_fd_catalog();
  if (set == "power") return replicated_power_catalog();
  throw std::invalid_argument("unknown plan set: " + set);
}

int cmd_cost(const RunConfig& cfg, const std::string& set, double t_limit_ms) {
  const DeviceModel device = load_device(cfg);
  const double n = static_cast<double>(cfg.input_len);
  std::vector<PlanCandidate> candidates;
  if (cfg.f_max > 0.0) {
    PlanCandidate cand;
    cand.name = cfg.plan_name;
    cand.plan = build_plan(cfg);
    cand.f_max_mhz = cfg.f_max;
    candidates.push_back(std::move(cand));
  } else {
    candidates = select_catalog(set);
  }
  std::vector<CostReport> reports;
  for (const auto& cand : candidates) {
    CostReport rep = theoretical_latency(cand.plan, cand.f_max_mhz, n, cfg.taps,
                                         static_cast<int>(cfg.filters), device);
    rep.name = cand.name;
    reports.push_back(std::move(rep));
  }
  const double tflops = required_performance(n, static_cast<double>(cfg.taps),
                                             static_cast<double>(cfg.filters),
                                             t_limit_ms * 1e-3) /
                        1e12;
  std::printf("required performance: 8NKM/t_limit = %.2f TFLOPS "
              "(N=%lld, K=%lld, M=%lld, t_limit=%.1f ms)\n",
              tflops, static_cast<long long>(cfg.input_len),
              static_cast<long long>(cfg.taps),
              static_cast<long long>(cfg.filters), t_limit_ms);
  std::printf("device: %d DSP blocks (K'=%lld), %d x %d-bit banks @ %.0f MHz\n",
              device.n_dsp, static_cast<long long>(device.max_parallel_taps()),
              device.bank_count, device.bank_bus_width_bits,
              device.bank_rate_mhz);
  print_reports(reports, cfg.filters, cfg.csv_path);
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const std::string& set) {
  const DeviceModel device = load_device(cfg);
  const auto reports =
      sweep(device, select_catalog(set), static_cast<double>(cfg.input_len),
            cfg.taps, static_cast<int>(cfg.filters));
  print_reports(reports, cfg.filters, cfg.csv_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FT-convolution engine and accelerator cost model"};
  app.require_subcommand(1);

  RunConfig cfg;
  bool bank_mode = false;
  bool sweep_filters = false;
  std::string plan_set = "all";
  double t_limit_ms = 89.5;

  auto* gen = app.add_subcommand("gen", "generate a deterministic signal or bank");
  add_data_flags(gen, cfg);
  gen->add_flag("--bank-out", bank_mode, "generate a filter bank instead of a signal");
  gen->add_option("--out", cfg.out_path, "output .cf32 path")->required();

  auto* conv = app.add_subcommand("conv", "convolve with a single filter");
  add_data_flags(conv, cfg);
  add_plan_flags(conv, cfg);
  conv->add_option("--out", cfg.out_path, "output .cf32 path");

  auto* fop = app.add_subcommand("fop", "full filter-output-plane run");
  add_data_flags(fop, cfg);
  add_plan_flags(fop, cfg);
  fop->add_option("--out", cfg.out_path, "output FOP path");
  fop->add_option("--csv", cfg.csv_path, "optional CSV export");

  auto* verify = app.add_subcommand("verify", "check a plan against the double-precision oracle");
  add_data_flags(verify, cfg);
  add_plan_flags(verify, cfg);
  verify->add_flag("--power", cfg.power, "verify spectral-power rows");

  auto* bench = app.add_subcommand("bench", "wall-clock benchmark with GFLOPS report");
  add_data_flags(bench, cfg);
  add_plan_flags(bench, cfg);
  bench->add_option("--reps", cfg.reps, "timed repetitions (median reported)");
  bench->add_flag("--sweep-filters", sweep_filters, "benchmark every M in 1..filters");
  bench->add_flag("--power", cfg.power, "include the spectral-power stage");
  bench->add_option("--csv", cfg.csv_path, "CSV output path");

  auto* cost = app.add_subcommand("cost", "analytic latency and resource report");
  add_data_flags(cost, cfg);
  add_plan_flags(cost, cfg);
  cost->add_flag("--power", cfg.power, "plan computes spectral power");
  cost->add_option("--set", plan_set, "plan set: all | fd-single | power");
  cost->add_option("--fmax", cfg.f_max, "kernel frequency in MHz (single-plan mode)");
  cost->add_option("--t-limit", t_limit_ms, "real-time budget in ms");
  cost->add_option("--device-model", cfg.device_model_path, "device JSON file");
  cost->add_option("--csv", cfg.csv_path, "CSV output path");

  auto* sweep_cmd = app.add_subcommand("sweep", "ranked design-space sweep");
  add_data_flags(sweep_cmd, cfg);
  sweep_cmd->add_option("--set", plan_set, "plan set: all | fd-single | power");
  sweep_cmd->add_option("--device-model", cfg.device_model_path, "device JSON file");
  sweep_cmd->add_option("--csv", cfg.csv_path, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg, bank_mode);
    if (conv->parsed()) return cmd_conv(cfg);
    if (fop->parsed()) return cmd_fop(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (bench->parsed()) return cmd_bench(cfg, sweep_filters);
    if (cost->parsed()) return cmd_cost(cfg, plan_set, t_limit_ms);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, plan_set);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
