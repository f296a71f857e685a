#include "ftconv/fdfir.hpp"

#include <algorithm>
#include <functional>
#include <thread>

#include "ftconv/tdfir.hpp"

namespace ftconv {

bool is_fd_kind(PlanKind kind) {
  return kind == PlanKind::NaiveFD || kind == PlanKind::Aols ||
         kind == PlanKind::Tols;
}

bool is_ols_kind(PlanKind kind) {
  return kind == PlanKind::Aols || kind == PlanKind::Tols;
}

const char* plan_kind_name(PlanKind kind) {
  switch (kind) {
    case PlanKind::NaiveTD: return "naive-td";
    case PlanKind::OlaTD: return "ola-td";
    case PlanKind::NaiveFD: return "naive-fd";
    case PlanKind::Aols: return "aols";
    case PlanKind::Tols: return "tols";
  }
  throw std::invalid_argument("plan_kind_name: unknown kind");
}

PlanKind plan_kind_from_name(const std::string& name) {
  if (name == "naive-td") return PlanKind::NaiveTD;
  if (name == "ola-td") return PlanKind::OlaTD;
  if (name == "naive-fd") return PlanKind::NaiveFD;
  if (name == "aols") return PlanKind::Aols;
  if (name == "tols") return PlanKind::Tols;
  throw std::invalid_argument("unknown plan kind: " + name);
}

void validate_plan(const ExecutionPlan& plan, Index max_taps) {
  if (plan.replicas < 1)
    throw std::invalid_argument("ExecutionPlan: replicas must be >= 1");
  if (plan.devices < 1)
    throw std::invalid_argument("ExecutionPlan: devices must be >= 1");
  if (plan.replicas > 1 && !plan.power_output)
    throw std::invalid_argument(
        "ExecutionPlan: replicas > 1 requires power_output");
  if (plan.replicas > 1 && !is_ols_kind(plan.kind))
    throw std::invalid_argument(
        "ExecutionPlan: replicas > 1 only valid for overlap-save kinds");
  if (plan.kind == PlanKind::OlaTD && plan.sub_filter_taps < 1)
    throw std::invalid_argument("ExecutionPlan: ola-td requires sub_filter_taps");
  if (is_ols_kind(plan.kind)) {
    validate_plan(plan.fft_plan());
    if (plan.n_ft <= max_taps)
      throw std::invalid_argument("ExecutionPlan: n_ft must exceed filter taps");
  }
}

RArrayF spectral_power(const CArrayF& y) { return y.abs2(); }

namespace {

Index next_pow2(Index v) {
  Index n = 1;
  while (n < v) n <<= 1;
  return n;
}

// Chunk c of the overlap-save split: n_ft samples covering output
// positions [c*valid, c*valid + valid) with K-1 samples of history in
// front. Out-of-range samples are zero.
CArrayF make_chunk(const CArrayF& x, Index chunk, Index n_ft, Index taps) {
  const Index valid = n_ft - (taps - 1);
  const Index begin = chunk * valid - (taps - 1);
  CArrayF buf = CArrayF::Zero(n_ft);
  const Index src_begin = std::max<Index>(begin, 0);
  const Index src_end = std::min<Index>(begin + n_ft, x.size());
  if (src_end > src_begin)
    buf.segment(src_begin - begin, src_end - src_begin) =
        x.segment(src_begin, src_end - src_begin);
  return buf;
}

CArrayF forward_ordered(CArrayF buf, FftOrdering ordering) {
  fft_dif_bitrev(buf.data(), buf.size(), FftDirection::Forward);
  if (ordering == FftOrdering::Natural) buf = bit_reverse_permute(buf);
  return buf;
}

// Unnormalized-product spectrum (in `ordering`) back to a natural-order
// time-domain array.
CArrayF inverse_natural(CArrayF prod, FftOrdering ordering) {
  if (ordering == FftOrdering::BitReversed) prod = bit_reverse_permute(prod);
  fft_dif_bitrev(prod.data(), prod.size(), FftDirection::Inverse);
  prod = bit_reverse_permute(prod);
  prod *= std::complex<float>(1.0f / static_cast<float>(prod.size()), 0.0f);
  return prod;
}

void parallel_over_filters(Index m, int workers,
                           const std::function<void(Index)>& body) {
  if (workers <= 1 || m <= 1) {
    for (Index i = 0; i < m; ++i) body(i);
    return;
  }
  const int nthreads = static_cast<int>(std::min<Index>(workers, m));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      for (Index i = t; i < m; i += nthreads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

CArrayF conv_naive_fd(const CArrayF& x, const CArrayF& h) {
  if (x.size() == 0 || h.size() == 0)
    throw std::invalid_argument("conv_naive_fd: empty input");
  const Index n = next_pow2(x.size() + h.size() - 1);
  CArrayF xs = CArrayF::Zero(n);
  xs.head(x.size()) = x;
  CArrayF hs = CArrayF::Zero(n);
  hs.head(h.size()) = h;
  fft_dif_bitrev(xs.data(), n, FftDirection::Forward);
  fft_dif_bitrev(hs.data(), n, FftDirection::Forward);
  xs *= hs;
  xs = inverse_natural(std::move(xs), FftOrdering::BitReversed);
  return xs.head(x.size());
}

PreparedTemplate prepare_template(const CArrayF& h, const FftPlan& plan) {
  validate_plan(plan);
  if (h.size() >= plan.n_ft)
    throw std::invalid_argument("prepare_template: taps must be < n_ft");
  if (h.size() == 0)
    throw std::invalid_argument("prepare_template: empty coefficients");
  CArrayF padded = CArrayF::Zero(plan.n_ft);
  padded.head(h.size()) = h;
  PreparedTemplate tmpl;
  tmpl.spectrum = forward_ordered(std::move(padded), plan.ordering);
  tmpl.ordering = plan.ordering;
  tmpl.original_taps = h.size();
  return tmpl;
}

CArrayF conv_ols_fd(const CArrayF& x, const PreparedTemplate& tmpl,
                    const FftPlan& plan) {
  validate_plan(plan);
  if (x.size() == 0) throw std::invalid_argument("conv_ols_fd: empty input");
  if (tmpl.ordering != plan.ordering)
    throw std::invalid_argument("conv_ols_fd: template ordering does not match plan");
  if (tmpl.spectrum.size() != plan.n_ft)
    throw std::invalid_argument("conv_ols_fd: template prepared for a different n_ft");
  const Index taps = tmpl.original_taps;
  if (plan.n_ft <= taps)
    throw std::invalid_argument("conv_ols_fd: n_ft must exceed filter taps");

  const Index n = x.size();
  const Index valid = plan.n_ft - (taps - 1);
  const Index chunks = (n + valid - 1) / valid;
  CArrayF y(n);
  for (Index c = 0; c < chunks; ++c) {
    CArrayF spec = forward_ordered(make_chunk(x, c, plan.n_ft, taps),
                                   plan.ordering);
    spec *= tmpl.spectrum;
    const CArrayF yc = inverse_natural(std::move(spec), plan.ordering);
    const Index out_begin = c * valid;
    const Index len = std::min(valid, n - out_begin);
    y.segment(out_begin, len) = yc.segment(taps - 1, len);
  }
  return y;
}

PlanResult run_plan(const CArrayF& x, const FilterBank& bank,
                    const ExecutionPlan& plan, int workers) {
  validate_plan(plan, bank.max_taps);
  if (x.size() == 0) throw std::invalid_argument("run_plan: empty input");
  const Index n = x.size();
  const Index m = bank.count();

  PlanResult result;
  result.outputs.assign(static_cast<std::size_t>(m), CArrayF());

  const auto per_filter_group = [&](long long count) {
    return (count + plan.replicas - 1) / plan.replicas;
  };

  switch (plan.kind) {
    case PlanKind::NaiveTD:
    case PlanKind::OlaTD: {
      const Index kprime =
          plan.sub_filter_taps > 0 ? plan.sub_filter_taps : bank.max_taps;
      const long long r = (bank.max_taps + kprime - 1) / kprime;
      parallel_over_filters(m, workers, [&](Index i) {
        if (plan.kind == PlanKind::NaiveTD) {
          result.outputs[static_cast<std::size_t>(i)] =
              conv_naive_td(x, bank.templates[static_cast<std::size_t>(i)]);
        } else {
          result.outputs[static_cast<std::size_t>(i)] = conv_ola_td(
              x, bank.templates[static_cast<std::size_t>(i)],
              OlaConfig{plan.sub_filter_taps});
        }
      });
      result.log.launches = r * m;
      break;
    }
    case PlanKind::NaiveFD: {
      // The input spectrum is computed once and reused for all filters.
      const Index nfft = next_pow2(n + bank.max_taps - 1);
      CArrayF xs = CArrayF::Zero(nfft);
      xs.head(n) = x;
      fft_dif_bitrev(xs.data(), nfft, FftDirection::Forward);
      parallel_over_filters(m, workers, [&](Index i) {
        const CArrayF& h = bank.templates[static_cast<std::size_t>(i)];
        CArrayF hs = CArrayF::Zero(nfft);
        hs.head(h.size()) = h;
        fft_dif_bitrev(hs.data(), nfft, FftDirection::Forward);
        hs *= xs;
        hs = inverse_natural(std::move(hs), FftOrdering::BitReversed);
        result.outputs[static_cast<std::size_t>(i)] = hs.head(n);
      });
      result.log.launches = m + 1;
      result.log.forward_transforms = 1;
      break;
    }
    case PlanKind::Aols: {
      const FftPlan fp = plan.fft_plan();
      const Index taps = bank.max_taps;
      const Index valid = plan.n_ft - (taps - 1);
      const Index chunks = (n + valid - 1) / valid;
      // Forward pass once: spectra of all input chunks, reused by every
      // filter (the M+1 launch semantics).
      std::vector<CArrayF> spectra(static_cast<std::size_t>(chunks));
      for (Index c = 0; c < chunks; ++c)
        spectra[static_cast<std::size_t>(c)] =
            forward_ordered(make_chunk(x, c, plan.n_ft, taps), plan.ordering);
      parallel_over_filters(m, workers, [&](Index i) {
        const PreparedTemplate tmpl =
            prepare_template(bank.templates[static_cast<std::size_t>(i)], fp);
        CArrayF y(n);
        for (Index c = 0; c < chunks; ++c) {
          CArrayF prod = spectra[static_cast<std::size_t>(c)] * tmpl.spectrum;
          const CArrayF yc = inverse_natural(std::move(prod), plan.ordering);
          const Index out_begin = c * valid;
          const Index len = std::min(valid, n - out_begin);
          // Chunks carry max_taps-1 samples of history, so the discard
          // offset is bank-wide even for shorter filters.
          y.segment(out_begin, len) = yc.segment(taps - 1, len);
        }
        result.outputs[static_cast<std::size_t>(i)] = std::move(y);
      });
      result.log.launches = per_filter_group(m) + 1;
      result.log.forward_transforms = chunks;
      result.log.chunks_per_launch.assign(
          static_cast<std::size_t>(result.log.launches), chunks);
      break;
    }
    case PlanKind::Tols: {
      const FftPlan fp = plan.fft_plan();
      const Index taps = bank.max_taps;
      const Index valid = plan.n_ft - (taps - 1);
      const Index chunks = (n + valid - 1) / valid;
      parallel_over_filters(m, workers, [&](Index i) {
        const PreparedTemplate tmpl =
            prepare_template(bank.templates[static_cast<std::size_t>(i)], fp);
        result.outputs[static_cast<std::size_t>(i)] = conv_ols_fd(x, tmpl, fp);
      });
      result.log.launches = per_filter_group(m);
      result.log.forward_transforms = static_cast<long long>(m) * chunks;
      result.log.chunks_per_launch.assign(
          static_cast<std::size_t>(result.log.launches), chunks);
      break;
    }
  }

  if (plan.power_output) {
    result.fop.rows.resize(static_cast<std::size_t>(m) + 1);
    result.fop.rows[0] = spectral_power(x);
    for (Index i = 0; i < m; ++i)
      result.fop.rows[static_cast<std::size_t>(i) + 1] =
          spectral_power(result.outputs[static_cast<std::size_t>(i)]);
    result.outputs.clear();
  }
  return result;
}

}  // namespace ftconv
