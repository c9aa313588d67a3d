// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hsvol/constants.hpp"
#include "hsvol/groups.hpp"
#include "hsvol/mixedstates.hpp"
#include "hsvol/verify.hpp"

using namespace hsvol;

namespace {

ExactValue integer(long v) { return ExactValue::integer(v); }
ExactValue sqrt_of(long v) { return ExactValue::sqrt_of(v); }
ExactValue pi_pow(long k) { return ExactValue::pi_power(2 * k); }

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void expect_equal(const ExactValue& got, const ExactValue& want, const std::string& what) {
    if (!(got == want)) failures_.push_back(what + ": got " + got.to_string() + ", want " + want.to_string());
  }

  const std::string& name() const { return name_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::string name_;
  std::vector<std::string> failures_;
};

bool report(const std::string& label, double budget_seconds, const std::function<void(Criterion&)>& body) {
  Criterion c(label);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > budget_seconds) {
    std::ostringstream os;
    os << "took " << elapsed << " s, budget " << budget_seconds << " s";
    c.expect(false, os.str());
  }
  const bool ok = c.failures().empty();
  std::ostringstream time;
  time.precision(3);
  time << std::fixed << elapsed;
  std::cout << (ok ? "PASS" : "FAIL") << "  " << c.name() << "  (" << time.str() << " s)\n";
  for (const auto& f : c.failures()) std::cout << "      - " << f << "\n";
  std::cout.flush();
  return ok;
}

void check_estimate(Criterion& c, const CheckReport& r) {
  std::ostringstream os;
  os << r.check << ": estimate " << r.estimate << ", expected " << r.expected << ", stderr " << r.std_error;
  c.expect(r.pass, os.str());
}

RunConfig config(std::int64_t samples, std::uint64_t seed) {
  RunConfig cfg;
  cfg.n_samples = samples;
  cfg.seed = seed;
  cfg.chunks = 16;
  cfg.workers = 1;
  return cfg;
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

}  // namespace

int main() {
  bool ok = true;
  const StateSpaceSpec c2{2, Field::Complex}, c3{3, Field::Complex}, c4{4, Field::Complex};
  const StateSpaceSpec r2{2, Field::Real};

  ok &= report("1. exact golden table", 1.0, [&](Criterion& c) {
    c.expect_equal(vol_mixed(c2), pi_pow(1) * sqrt_of(2) / integer(3), "V2 complex");
    c.expect_equal(vol_mixed(c3), pi_pow(3) / (integer(840) * sqrt_of(3)), "V3 complex");
    c.expect_equal(vol_edge(c2, 1), integer(2) * pi_pow(1), "S2 complex");
    c.expect_equal(vol_edge(c3, 1), sqrt_of(2) * pi_pow(3) / integer(105), "S3 complex");
    c.expect_equal(vol_mixed(r2), pi_pow(1) / integer(2), "V2 real");
    c.expect_equal(vol_edge(r2, 1), sqrt_of(2) * pi_pow(1), "S2 real");
    c.expect_equal(geometry(c2).gamma, integer(3) * sqrt_of(2), "gamma2");
    c.expect_equal(geometry(c3).gamma, integer(8) * sqrt_of(6), "gamma3");
    c.expect_equal(geometry(c4).gamma, integer(15) * sqrt_of(12), "gamma4");
    c.expect_equal(geometry(r2).gamma, integer(2) * sqrt_of(2), "gamma2 real");
  });

  ok &= report("2. group volume golden table", 1.0, [&](Criterion& c) {
    using F = Family;
    using C = Convention;
    c.expect_equal(vol_group({F::Unitary, 1}, C::A), integer(2) * pi_pow(1), "U(1) A");
    c.expect_equal(vol_group({F::Unitary, 1}, C::B), integer(2) * pi_pow(1), "U(1) B");
    c.expect_equal(vol_group({F::Unitary, 1}, C::C), sqrt_of(2) * pi_pow(1), "U(1) C");
    c.expect_equal(vol_group({F::Unitary, 2}, C::A), integer(8) * pi_pow(3), "U(2) A");
    c.expect_equal(vol_group({F::Unitary, 2}, C::B), integer(4) * pi_pow(3), "U(2) B");
    c.expect_equal(vol_group({F::Unitary, 2}, C::C), integer(2) * pi_pow(3), "U(2) C");
    c.expect_equal(vol_group({F::SpecialUnitary, 2}, C::C), integer(2) * pi_pow(2), "SU(2) C");
    c.expect_equal(vol_group({F::SpecialUnitary, 3}, C::C), sqrt_of(3) * pi_pow(5), "SU(3) C");
    c.expect_equal(vol_group({F::SpecialUnitary, 4}, C::C), sqrt_of(2) * pi_pow(9) / integer(3), "SU(4) C");
    c.expect_equal(vol_group({F::Orthogonal, 2}, C::A), integer(4) * sqrt_of(2) * pi_pow(1), "O(2) A");
    c.expect_equal(vol_group({F::Orthogonal, 2}, C::B), integer(4) * pi_pow(1), "O(2) B");
    c.expect_equal(vol_group({F::Orthogonal, 3}, C::A), integer(32) * sqrt_of(2) * pi_pow(2), "O(3) A");
    c.expect_equal(vol_group({F::Orthogonal, 3}, C::B), integer(16) * pi_pow(2), "O(3) B");
    c.expect_equal(vol_group({F::SpecialOrthogonal, 3}, C::B), integer(8) * pi_pow(2), "SO(3) B");
    c.expect_equal(vol_coset({F::RealProjective, 3}, C::C), pi_pow(2), "RP3 C");
  });

  ok &= report("3. structural identities", 5.0, [&](Criterion& c) {
    for (int n = 2; n <= 6; ++n) {
      const std::string tag = " N=" + std::to_string(n);
      for (Field field : {Field::Complex, Field::Real}) {
        const StateSpaceSpec spec{n, field};
        const std::string ftag = tag + " " + std::string(to_string(field));
        c.expect_equal(vol_edge(spec, 0), vol_mixed(spec), "edge 0" + ftag);
        const GeometrySummary g = geometry(spec);
        c.expect_equal(g.gamma, integer(spec.dimension()) / g.inner_radius, "gamma = D/r" + ftag);
      }
      c.expect_equal(vol_edge({n, Field::Complex}, n - 1),
                     (integer(2) * pi_pow(1)).pow(n - 1) / gamma_exact(HalfInteger::integer(n)), "pure states" + tag);
    }
    for (int n = 1; n <= 8; ++n) {
      const std::string tag = " N=" + std::to_string(n);
      ExactValue spheres = integer(1);
      for (int k = 1; k <= n; ++k) spheres *= sphere_volume(2 * k - 1);
      c.expect_equal(vol_group({Family::Unitary, n}, Convention::B), spheres, "U(N) sphere product" + tag);
      for (Convention conv : {Convention::A, Convention::B, Convention::C}) {
        const std::string ctag = tag + " " + std::string(to_string(conv));
        ExactValue complex = integer(1), real = integer(1);
        for (int k = 1; k < n; ++k) {
          complex *= vol_coset({Family::ComplexProjective, k}, conv);
          real *= vol_coset({Family::RealProjective, k}, conv);
        }
        c.expect_equal(vol_coset({Family::ComplexFlag, n}, conv), complex, "complex flag product" + ctag);
        c.expect_equal(vol_coset({Family::RealFlag, n}, conv), real, "real flag product" + ctag);
        const ExactValue u = vol_group({Family::Unitary, n}, conv);
        c.expect_equal(vol_group({Family::SpecialUnitary, n}, conv),
                       sqrt_of(n) * u / vol_group({Family::Unitary, 1}, conv), "SU stretching" + ctag);
        c.expect_equal(vol_group({Family::SpecialOrthogonal, n}, conv),
                       vol_group({Family::Orthogonal, n}, conv) / integer(2), "SO = O/2" + ctag);
      }
      const ExactValue ub = vol_group({Family::Unitary, n}, Convention::B);
      c.expect_equal(vol_group({Family::Unitary, n}, Convention::A), integer(2).pow(n * (n - 1) / 2) * ub,
                     "U A/B" + tag);
      c.expect_equal(vol_group({Family::Unitary, n}, Convention::C), sqrt_of(2).pow(-n) * ub, "U C/B" + tag);
      const ExactValue ob = vol_group({Family::Orthogonal, n}, Convention::B);
      c.expect_equal(vol_group({Family::Orthogonal, n}, Convention::A), sqrt_of(2).pow(n * (n - 1) / 2) * ob,
                     "O A/B" + tag);
      c.expect_equal(vol_group({Family::Orthogonal, n}, Convention::C), ob, "O C/B" + tag);
    }
  });

  ok &= report("4. float radii", 1.0, [&](Criterion& c) {
    const GeometrySummary g3 = geometry(c3), g4 = geometry(c4);
    auto near = [&](double got, double want, const std::string& what) {
      std::ostringstream os;
      os << what << ": " << got << " vs " << want;
      c.expect(std::abs(got - want) <= 1e-3, os.str());
    };
    near(g3.effective_radius, 0.519, "rho3");
    near(g4.effective_radius, 0.428, "rho4");
    near(g3.outer_radius.to_double(), 0.816, "R3");
    near(g3.inner_radius.to_double(), 0.408, "r3");
    near(g4.outer_radius.to_double(), 0.866, "R4");
    near(g4.inner_radius.to_double(), 0.289, "r4");
  });

  ok &= report("5. measure verification", 120.0, [&](Criterion& c) {
    for (int n = 1; n <= 4; ++n) {
      for (auto [alpha, beta] : {std::pair{1.0, 2.0}, {3.0, 2.0}, {1.0, 1.0}, {2.0, 1.0}}) {
        const auto exact = exact_params(n, alpha, beta);
        const double expected = c_norm(*exact).inverse().to_double();
        const std::string name = "norm:n=" + std::to_string(n) + ":alpha=" + std::to_string(int(alpha)) +
                                 ":beta=" + std::to_string(int(beta));
        check_estimate(c, compare_estimate(name, expected, mc_norm_constant(n, alpha, beta, config(1000000, 101))));
      }
    }
    SuiteRequest purity;
    purity.suite = "purity";
    purity.config = config(100000, 202);
    const auto reports = run_suite(purity);
    c.expect(reports.size() == 3, "purity suite size");
    const double targets[] = {0.8, 0.75, 0.6};
    for (std::size_t i = 0; i < reports.size() && i < 3; ++i) {
      c.expect(std::abs(reports[i].expected - targets[i]) < 1e-15, reports[i].check + " target");
      check_estimate(c, reports[i]);
    }
    for (Field field : {Field::Complex, Field::Real}) {
      const FitResult fit = spectral_fit_test(2, field, 20, config(100000, 303));
      std::ostringstream os;
      os << "fit N=2 " << to_string(field) << ": p = " << fit.p_value;
      c.expect(fit.p_value > 0.001, os.str());
    }
    const FitResult negative =
        spectral_fit_test(2, Field::Real, 20, config(100000, 303), SamplerVariant::SquareRealGinibre);
    std::ostringstream os;
    os << "negative control: p = " << negative.p_value;
    c.expect(negative.p_value < 0.001, os.str());
  });

  ok &= report("6. hit-or-miss geometry", 120.0, [&](Criterion& c) {
    const MCEstimate two = mc_hit_or_miss_fraction(2, config(100000, 404));
    c.expect(two.mean == 1.0, "N=2 fraction is not exactly 1");
    const double expected = hit_or_miss_expected(3);
    c.expect(std::abs(expected - 0.0266) < 5e-4, "N=3 closed form near 0.0266");
    check_estimate(c, compare_estimate("hitmiss:n=3", expected, mc_hit_or_miss_fraction(3, config(1000000, 505))));
  });

  ok &= report("7. determinism across worker counts", 120.0, [&](Criterion& c) {
    std::vector<std::string> outputs;
    for (const char* workers : {"1", "2", "8"}) {
      for (int repeat = 0; repeat < 2; ++repeat) {
        int code = 0;
        outputs.push_back(run_cli({"verify", "--suite", "all", "--samples", "32000", "--seed", "606", "--chunks",
                                   "16", "--workers", workers, "--format", "json"},
                                  code));
        c.expect(code == 0 || code == 1, "verify exited with a usage error");
      }
    }
    for (std::size_t i = 1; i < outputs.size(); ++i) {
      c.expect(outputs[i] == outputs[0], "report " + std::to_string(i) + " differs from the first");
    }
    c.expect(!outputs[0].empty() && outputs[0].front() == '[', "empty or malformed report");
  });

  ok &= report("8. gamma_N / D^(3/2) increases toward 1 on N = 2..30", 5.0, [&](Criterion& c) {
    double previous = 0.0;
    for (int n = 2; n <= 30; ++n) {
      const StateSpaceSpec spec{n, Field::Complex};
      const double d = spec.dimension();
      const double ratio = std::exp(std::log(10.0) * geometry(spec).gamma.log10() - 1.5 * std::log(d));
      c.expect(ratio > previous, "not increasing at N=" + std::to_string(n));
      c.expect(ratio < 1.0, "ratio above 1 at N=" + std::to_string(n));
      previous = ratio;
    }
    c.expect(1.0 - previous < 0.02, "ratio at N=30 is not within 2% of 1");
  });

  std::cout << (ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
  return ok ? 0 : 1;
}
