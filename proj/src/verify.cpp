#include "hsvol/verify.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hsvol/constants.hpp"
#include "hsvol/groups.hpp"
#include "hsvol/sampling.hpp"

namespace hsvol {

namespace {

constexpr double kPValueThreshold = 1e-3;
constexpr double kSigmaBand = 3.0;
constexpr double kMinExpectedCount = 5.0;

// Welford accumulator; merge() is the parallel-variance combine.
struct Moments {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    const auto total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / static_cast<double>(total);
    m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) /
                         static_cast<double>(total);
    count = total;
  }
};

void validate(const RunConfig& config) {
  if (config.n_samples < 1) throw std::domain_error("run config: n_samples must be >= 1");
  if (config.chunks < 1) throw std::domain_error("run config: chunks must be >= 1");
  if (config.workers < 1) throw std::domain_error("run config: workers must be >= 1");
  if (config.n_samples % config.chunks != 0) {
    throw std::domain_error("run config: n_samples must be a multiple of chunks");
  }
}

/// Runs fn(chunk, chunk_size) for every chunk on config.workers threads.
/// Results are indexed by chunk, so the merge order never depends on scheduling.
template <class Result, class Fn>
std::vector<Result> run_chunks(const RunConfig& config, Fn fn) {
  validate(config);
  const std::int64_t chunk_size = config.n_samples / config.chunks;
  std::vector<Result> results(static_cast<std::size_t>(config.chunks));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int c = next++; c < config.chunks; c = next++) {
      try {
        results[static_cast<std::size_t>(c)] = fn(c, chunk_size);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::min(config.workers, config.chunks);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

MCEstimate summarize(const std::vector<Moments>& chunks, const RunConfig& config) {
  Moments total;
  for (const auto& m : chunks) total.merge(m);
  MCEstimate out;
  out.mean = total.mean;
  out.n_samples = total.count;
  const double variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
  out.std_error = std::sqrt(variance / static_cast<double>(total.count));
  out.seed = config.seed;
  out.chunks = config.chunks;
  return out;
}

template <class Sample>
MCEstimate estimate(const RunConfig& config, Sample sample) {
  auto chunks = run_chunks<Moments>(config, [&](int chunk, std::int64_t size) {
    RandomStream rng(config.seed, static_cast<std::uint64_t>(chunk));
    Moments m;
    for (std::int64_t i = 0; i < size; ++i) m.add(sample(rng));
    return m;
  });
  return summarize(chunks, config);
}

double largest_eigenvalue(const DensityMatrix& rho) {
  if (rho.size() == 2) {
    // closed form for 2x2 avoids the Jacobi loop in the hot path
    const double a = rho.matrix(0, 0).real();
    const double d = rho.matrix(1, 1).real();
    const double off = std::abs(rho.matrix(0, 1));
    return 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  }
  return eigvals_hermitian(rho.matrix).values.front();
}

struct Point {
  double x;
  double y;
};

// Clip a convex polygon to x <= t.
std::vector<Point> clip_left_of(const std::vector<Point>& poly, double t) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    const bool a_in = a.x <= t;
    const bool b_in = b.x <= t;
    if (a_in) out.push_back(a);
    if (a_in != b_in) {
      const double s = (t - a.x) / (b.x - a.x);
      out.push_back({t, a.y + s * (b.y - a.y)});
    }
  }
  return out;
}

template <class F>
double integrate_triangle(const Point& a, const Point& b, const Point& c, F f) {
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  const double area2 = std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
  if (area2 == 0.0) return 0.0;
  // Duffy map (u, v) -> a + u (b - a) + u v (c - b), Jacobian area2 * u
  return area2 * Gauss::integrate(
                     [&](double u) {
                       return u * Gauss::integrate(
                                      [&](double v) {
                                        const double x = a.x + u * (b.x - a.x) + u * v * (c.x - b.x);
                                        const double y = a.y + u * (b.y - a.y) + u * v * (c.y - b.y);
                                        return f(x, y);
                                      },
                                      0.0, 1.0);
                     },
                     0.0, 1.0);
}

// P(max <= t) for N = 3: 3! times the mass of the ordered chamber
// l1 >= l2 >= l3 >= 0 cut at l1 <= t. The Vandermonde has fixed sign there.
double cdf_three(double beta, double t) {
  if (t <= 1.0 / 3.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double norm = 6.0 * std::exp(log_c_norm(3, 1.0, beta));
  const std::vector<Point> chamber{{1.0, 0.0}, {0.5, 0.5}, {1.0 / 3.0, 1.0 / 3.0}};
  const std::vector<Point> region = clip_left_of(chamber, t);
  auto density = [beta](double x, double y) {
    const double z = 1.0 - x - y;
    return std::pow((x - y) * (x - z) * (y - z), beta);
  };
  double mass = 0.0;
  for (std::size_t i = 1; i + 1 < region.size(); ++i) {
    mass += integrate_triangle(region[0], region[i], region[i + 1], density);
  }
  return std::clamp(norm * mass, 0.0, 1.0);
}

double beta_of(Field field) { return field == Field::Complex ? 2.0 : 1.0; }

std::string describe(const std::string& kind, int n, std::optional<Field> field) {
  std::string out = kind + ":n=" + std::to_string(n);
  if (field) out += ":" + std::string(to_string(*field));
  return out;
}

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// E tr(rho^2) = E tr W^2 / E (tr W)^2, since W/tr W is independent of tr W for
// Gaussian A. Complex N x K: (N + K)/(N K + 1). Real N x M: (N + M + 1)/(N M + 2).
double purity_expected(int n, Field field) {
  const double nn = n;
  if (field == Field::Complex) return 2.0 * nn / (nn * nn + 1.0);
  const double m = nn + 1.0;
  return (nn + m + 1.0) / (nn * m + 2.0);
}

}  // namespace

MCEstimate mc_norm_constant(int n, double alpha, double beta, const RunConfig& config) {
  if (n < 1 || !(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("mc_norm_constant: need n >= 1 and alpha, beta > 0");
  }
  // lgamma is evaluated here, outside the worker threads
  const double log_dirichlet = n * std::lgamma(alpha) - std::lgamma(n * alpha);
  const double scale = std::exp(log_dirichlet);
  return estimate(config, [&](RandomStream& rng) {
    std::gamma_distribution<double> gamma(alpha, 1.0);
    std::vector<double> lambda(static_cast<std::size_t>(n));
    double total = 0.0;
    for (auto& l : lambda) {
      l = gamma(rng);
      total += l;
    }
    double weight = scale;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        weight *= std::pow(std::abs(lambda[i] - lambda[j]) / total, beta);
      }
    }
    return weight;
  });
}

double hit_or_miss_expected(int n) {
  const StateSpaceSpec spec{n, Field::Complex};
  const int d = spec.dimension();
  const ExactValue outer = ExactValue::sqrt_of(mpq_class(n - 1, n));
  return (vol_mixed(spec) / (ball_volume(d) * outer.pow(d))).to_double();
}

MCEstimate mc_hit_or_miss_fraction(int n, const RunConfig& config) {
  if (n < 2) throw std::domain_error("mc_hit_or_miss_fraction: n must be >= 2");
  const BlochBasis basis(n);
  const int d = basis.dimension();
  const double radius = std::sqrt(static_cast<double>(n - 1) / n);
  return estimate(config, [&](RandomStream& rng) {
    Eigen::VectorXd tau(d);
    for (int i = 0; i < d; ++i) tau(i) = rng.normal();
    const double r = radius * std::pow(rng.uniform(), 1.0 / d);
    tau *= r / tau.norm();
    return is_positive(basis.from_bloch(tau), kPositivityTol) ? 1.0 : 0.0;
  });
}

MCEstimate mc_purity(int n, Field field, const RunConfig& config) {
  return estimate(config, [&](RandomStream& rng) {
    return sample_hs_density(n, field, rng).matrix.squaredNorm();
  });
}

double largest_eigenvalue_cdf(int n, Field field, double t) {
  if (n == 2) {
    const double x = std::clamp(2.0 * t - 1.0, 0.0, 1.0);
    return field == Field::Complex ? x * x * x : x * x;
  }
  if (n == 3) return cdf_three(beta_of(field), t);
  throw std::domain_error("largest_eigenvalue_cdf: reference marginal available for N in {2, 3}");
}

FitResult spectral_fit_test(int n, Field field, int bins, const RunConfig& config, SamplerVariant variant) {
  if (bins < 5) throw std::domain_error("spectral_fit_test: need at least 5 bins");
  if (n != 2 && n != 3) throw std::domain_error("spectral_fit_test: N must be 2 or 3");
  const double lo = 1.0 / n;
  const double width = (1.0 - lo) / bins;

  using Histogram = std::vector<std::int64_t>;
  auto partial = run_chunks<Histogram>(config, [&](int chunk, std::int64_t size) {
    RandomStream rng(config.seed, static_cast<std::uint64_t>(chunk));
    Histogram h(static_cast<std::size_t>(bins), 0);
    for (std::int64_t i = 0; i < size; ++i) {
      const DensityMatrix rho = variant == SamplerVariant::SquareRealGinibre
                                    ? sample_real_wishart(n, n, rng)
                                    : sample_hs_density(n, field, rng);
      const int bin = std::clamp(static_cast<int>((largest_eigenvalue(rho) - lo) / width), 0, bins - 1);
      ++h[static_cast<std::size_t>(bin)];
    }
    return h;
  });

  FitResult out;
  Histogram observed(static_cast<std::size_t>(bins), 0);
  for (const auto& h : partial) {
    for (int b = 0; b < bins; ++b) observed[static_cast<std::size_t>(b)] += h[static_cast<std::size_t>(b)];
  }
  const auto total = static_cast<double>(config.n_samples);
  std::vector<double> expected(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    const double left = b == 0 ? 0.0 : lo + b * width;
    const double right = b == bins - 1 ? 1.0 : lo + (b + 1) * width;
    expected[static_cast<std::size_t>(b)] =
        total * (largest_eigenvalue_cdf(n, field, right) - largest_eigenvalue_cdf(n, field, left));
  }

  // pool adjacent bins until each expected count reaches the threshold
  double acc_expected = 0.0;
  std::int64_t acc_observed = 0;
  for (int b = 0; b < bins; ++b) {
    acc_expected += expected[static_cast<std::size_t>(b)];
    acc_observed += observed[static_cast<std::size_t>(b)];
    if (acc_expected >= kMinExpectedCount) {
      out.expected.push_back(acc_expected);
      out.observed.push_back(acc_observed);
      acc_expected = 0.0;
      acc_observed = 0;
    }
  }
  if (acc_expected > 0.0 || acc_observed > 0) {
    if (out.expected.empty()) {
      out.expected.push_back(acc_expected);
      out.observed.push_back(acc_observed);
    } else {
      out.expected.back() += acc_expected;
      out.observed.back() += acc_observed;
    }
  }

  for (std::size_t k = 0; k < out.expected.size(); ++k) {
    const double diff = static_cast<double>(out.observed[k]) - out.expected[k];
    out.statistic += diff * diff / out.expected[k];
  }
  out.degrees_of_freedom = static_cast<int>(out.expected.size()) - 1;
  if (out.degrees_of_freedom < 1) throw std::domain_error("spectral_fit_test: too few samples for a fit");
  out.p_value = boost::math::gamma_q(out.degrees_of_freedom / 2.0, out.statistic / 2.0);
  return out;
}

CheckReport compare_estimate(std::string check, double expected, const MCEstimate& estimate) {
  CheckReport out;
  out.check = std::move(check);
  out.expected = expected;
  out.estimate = estimate.mean;
  out.std_error = estimate.std_error;
  const double diff = std::abs(estimate.mean - expected);
  if (estimate.std_error > 0.0) {
    out.sigmas = diff / estimate.std_error;
    out.pass = diff <= kSigmaBand * estimate.std_error;
  } else {
    out.pass = diff <= 1e-12 * std::max(1.0, std::abs(expected));
  }
  return out;
}

std::vector<CheckReport> run_suite(const SuiteRequest& request) {
  const std::string& suite = request.suite;
  const bool all = suite == "all";
  if (!all && suite != "purity" && suite != "norm" && suite != "hitmiss" && suite != "fit") {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  std::vector<CheckReport> out;

  if (all || suite == "purity") {
    std::vector<std::pair<int, Field>> cases{{2, Field::Complex}, {2, Field::Real}, {3, Field::Complex}};
    if (request.n) cases = {{*request.n, request.field.value_or(Field::Complex)}};
    for (const auto& [n, field] : cases) {
      out.push_back(compare_estimate(describe("purity", n, field), purity_expected(n, field),
                                     mc_purity(n, field, request.config)));
    }
  }

  if (all || suite == "norm") {
    std::vector<int> sizes{1, 2, 3, 4};
    std::vector<std::pair<double, double>> params{{1, 2}, {3, 2}, {1, 1}, {2, 1}};
    if (request.n) sizes = {*request.n};
    if (request.alpha || request.beta) params = {{request.alpha.value_or(1.0), request.beta.value_or(2.0)}};
    for (int n : sizes) {
      for (const auto& [alpha, beta] : params) {
        const auto exact = exact_params(n, alpha, beta);
        const double expected =
            exact ? c_norm(*exact).inverse().to_double() : std::exp(-log_c_norm(n, alpha, beta));
        out.push_back(compare_estimate("norm:n=" + std::to_string(n) + ":alpha=" + format_number(alpha) +
                                           ":beta=" + format_number(beta),
                                       expected, mc_norm_constant(n, alpha, beta, request.config)));
      }
    }
  }

  if (all || suite == "hitmiss") {
    std::vector<int> sizes{2, 3};
    if (request.n) sizes = {*request.n};
    for (int n : sizes) {
      out.push_back(compare_estimate(describe("hitmiss", n, std::nullopt), hit_or_miss_expected(n),
                                     mc_hit_or_miss_fraction(n, request.config)));
    }
  }

  if (all || suite == "fit") {
    struct FitCase {
      int n;
      Field field;
      SamplerVariant variant;
    };
    std::vector<FitCase> cases{{2, Field::Complex, SamplerVariant::Standard},
                               {2, Field::Real, SamplerVariant::Standard},
                               {2, Field::Real, SamplerVariant::SquareRealGinibre}};
    if (request.n) cases = {{*request.n, request.field.value_or(Field::Complex), SamplerVariant::Standard}};
    for (const auto& c : cases) {
      const FitResult fit = spectral_fit_test(c.n, c.field, request.bins, request.config, c.variant);
      const bool negative = c.variant == SamplerVariant::SquareRealGinibre;
      CheckReport report;
      report.check = describe("fit", c.n, c.field) + (negative ? ":negative-control" : "");
      report.expected = kPValueThreshold;
      report.estimate = fit.p_value;
      report.statistic = fit.statistic;
      report.pass = negative ? fit.p_value < kPValueThreshold : fit.p_value > kPValueThreshold;
      out.push_back(std::move(report));
    }
  }
  return out;
}

}  // namespace hsvol
