#include "sqmod/integrator.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "sqmod/kernels/kernels.hpp"
#include "sqmod/sobol.hpp"

namespace sqmod {

namespace {

constexpr std::size_t kChunk = 4096;

double replicate_mean(const SamplingChart& chart, const Integrand& integrand, std::span<const std::uint32_t> shift,
                      std::uint64_t points) {
  const int dim = static_cast<int>(chart.lo.size());
  SobolSequence sequence(dim);
  std::vector<double> x(dim);
  std::vector<double> log_lo(dim), log_span(dim);
  for (int d = 0; d < dim; ++d) {
    if (chart.logarithmic) {
      log_lo[d] = std::log(chart.lo[d]);
      log_span[d] = std::log(chart.hi[d] / chart.lo[d]);
    }
  }
  std::vector<double> chunk;
  chunk.reserve(kChunk);
  const auto& kernels = kernels::active();
  double total = 0.0;
  for (std::uint64_t i = 0; i < points; ++i) {
    const auto p = sequence.next();
    for (int d = 0; d < dim; ++d) {
      const double u = (static_cast<double>(p[d] ^ shift[d]) + 0.5) * 0x1p-32;
      x[d] = chart.logarithmic ? std::exp(log_lo[d] + log_span[d] * u) : chart.lo[d] + (chart.hi[d] - chart.lo[d]) * u;
    }
    if (chart.sorted_prefix > 1) std::sort(x.begin(), x.begin() + chart.sorted_prefix, std::greater<>());
    double jacobian = 1.0;
    if (chart.logarithmic)
      for (double v : x) jacobian *= v;
    chunk.push_back(integrand(x) * jacobian);
    if (chunk.size() == kChunk) {
      total += kernels.sum(chunk);
      chunk.clear();
    }
  }
  if (!chunk.empty()) total += kernels.sum(chunk);
  return total / static_cast<double>(points) * chart.measure();
}

}  // namespace

double student_t_99(int degrees_of_freedom) {
  boost::math::students_t_distribution<double> dist(degrees_of_freedom);
  return boost::math::quantile(dist, 0.995);
}

QmcEstimate integrate_chart(const SamplingChart& chart, const Integrand& integrand, const QmcOptions& options) {
  if (options.replicates < 2) throw std::invalid_argument("at least two replicates are required");
  if (options.samples < static_cast<std::uint64_t>(options.replicates))
    throw std::invalid_argument("samples must be at least the number of replicates");
  if (chart.lo.size() != chart.hi.size() || chart.lo.empty() ||
      static_cast<int>(chart.lo.size()) > SobolSequence::kMaxDimension)
    throw std::invalid_argument("malformed sampling chart");

  const int reps = options.replicates;
  const std::uint64_t per_replicate = options.samples / static_cast<std::uint64_t>(reps);
  const std::size_t dim = chart.lo.size();

  QmcEstimate out;
  out.seed = options.seed;
  out.samples = per_replicate * static_cast<std::uint64_t>(reps);
  out.replicate_values.assign(reps, 0.0);
  if (chart.empty()) return out;

  std::mt19937_64 rng(options.seed);
  std::vector<std::uint32_t> shifts(static_cast<std::size_t>(reps) * dim);
  for (auto& s : shifts) s = static_cast<std::uint32_t>(rng() >> 32);

  const int workers = std::clamp(options.threads, 1, reps);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](int worker) {
    try {
      for (int r = worker; r < reps; r += workers)
        out.replicate_values[r] = replicate_mean(
            chart, integrand, std::span<const std::uint32_t>(shifts).subspan(static_cast<std::size_t>(r) * dim, dim),
            per_replicate);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);

  double mean = 0.0;
  for (double v : out.replicate_values) mean += v;
  mean /= reps;
  double ss = 0.0;
  for (double v : out.replicate_values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (reps - 1));
  out.value = mean;
  out.error_bound = student_t_99(reps - 1) * sd / std::sqrt(static_cast<double>(reps));
  return out;
}

double deficiency_integrand(const Region& region, std::span<const double> alpha, OmegaSource omega,
                            const BuchstabTable* table) {
  if (!region.contains(alpha.data())) return 0.0;
  const std::size_t k = alpha.size();
  double sum = 0.0;
  double product = 1.0;
  for (double a : alpha) {
    sum += a;
    product *= a;
  }
  double weight;
  if (region.weight_kind() == WeightKind::Prime) {
    weight = 1.0 / ((1.0 - sum) * product);
  } else {
    const double last = alpha[k - 1];
    const double u = (1.0 - sum) / last;
    const double w = omega == OmegaSource::UpperBound ? omega_upper(u) : (*table)(u);
    weight = w / (product * last);
  }
  if (!std::isfinite(weight) || weight < 0.0)
    throw std::logic_error("non-finite deficiency weight in region " + std::string(region.name()) +
                           ": indicator admits a singular point");
  return weight;
}

DeficiencyEstimate integrate(const Region& region, const DeficiencyOptions& options) {
  if (options.qmc.samples < 10'000) throw std::invalid_argument("deficiency integrals need at least 10^4 samples");
  if (options.omega == OmegaSource::Table && options.table == nullptr)
    throw std::invalid_argument("OmegaSource::Table requires a Buchstab table");

  SamplingChart chart = options.sampling == Sampling::BoundingBox ? region.bounding_box() : region.folded_chart();
  chart.logarithmic = options.sampling == Sampling::FoldedLog;
  if (options.omega == OmegaSource::Table && !chart.empty()) {
    // u = (1 - sum)/alpha_k < 1/lo inside every region.
    const double needed = 1.0 / chart.lo.back();
    if (options.table->u_max() < needed)
      throw std::invalid_argument("Buchstab table too short: need u_max >= " + std::to_string(needed));
  }
  const Integrand integrand = [&](std::span<const double> alpha) {
    return deficiency_integrand(region, alpha, options.omega, options.table);
  };
  const QmcEstimate est = integrate_chart(chart, integrand, options.qmc);

  DeficiencyEstimate out;
  out.region = region.id();
  out.value = est.value;
  out.error_bound = est.error_bound;
  out.samples = est.samples;
  out.seed = est.seed;
  out.weight_kind = region.weight_kind();
  out.omega = options.omega;
  return out;
}

double paper_bound(RegionId id) {
  for (std::size_t i = 0; i < kAllRegions.size(); ++i)
    if (kAllRegions[i] == id) return kPaperBounds[i];
  return 0.0;
}

TotalDeficiency total_deficiency(const SieveParameters& params, const DeficiencyOptions& options) {
  TotalDeficiency out;
  out.regions_certified = true;
  for (RegionId id : kAllRegions) {
    const Region region(id, params, options.strict_gap);
    DeficiencyEstimate est = integrate(region, options);
    if (!(est.value + est.error_bound < paper_bound(id))) out.regions_certified = false;
    out.error_sum += est.error_bound;
    switch (id) {
      case RegionId::F131:
      case RegionId::F132:
      case RegionId::G132:
        out.s1 += est.value;
        break;
      case RegionId::F2:
      case RegionId::G2:
        out.s2 += est.value;
        break;
      case RegionId::F3:
        out.s3 += est.value;
        break;
    }
    out.estimates.push_back(est);
  }
  out.total = out.s1 + out.s2 + out.s3;
  out.margin = 1.0 - out.total;
  out.margin_certified = out.margin - out.error_sum > kRequiredMargin;
  return out;
}

}  // namespace sqmod
