#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "hsvol/constants.hpp"
#include "hsvol/groups.hpp"
#include "hsvol/mixedstates.hpp"
#include "hsvol/sampling.hpp"
#include "hsvol/verify.hpp"

namespace hsvol::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<double> float_of(const OutputRecord& r) {
  if (r.exact) return r.exact->to_double();
  return r.value;
}

std::optional<double> log10_of(const OutputRecord& r) {
  if (r.exact) {
    if (r.exact->sign() > 0) return r.exact->log10();
    return std::nullopt;
  }
  if (r.log10_value) return r.log10_value;
  if (r.value && *r.value > 0.0) return std::log10(*r.value);
  return std::nullopt;
}

std::string format_double(std::optional<double> x) {
  if (!x || !std::isfinite(*x)) return "";
  std::ostringstream os;
  os << std::setprecision(15) << *x;
  return os.str();
}

std::vector<std::string> cells(const OutputRecord& r) {
  auto opt = [](const std::optional<std::string>& s) { return s.value_or(""); };
  return {r.quantity,
          std::to_string(r.n),
          opt(r.field),
          opt(r.convention),
          r.rank ? std::to_string(*r.rank) : "",
          opt(r.alpha),
          opt(r.beta),
          r.exact ? r.exact->to_string() : "",
          format_double(float_of(r)),
          format_double(log10_of(r))};
}

json finite_or_null(std::optional<double> x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

json to_json(const OutputRecord& r) {
  json j;
  j["quantity"] = r.quantity;
  j["n"] = r.n;
  if (r.field) j["field"] = *r.field;
  if (r.convention) j["convention"] = *r.convention;
  if (r.rank) j["rank"] = *r.rank;
  if (r.alpha) j["alpha"] = *r.alpha;
  if (r.beta) j["beta"] = *r.beta;
  j["exact"] = r.exact ? json(r.exact->to_string()) : json(nullptr);
  j["float"] = finite_or_null(float_of(r));
  j["log10"] = finite_or_null(log10_of(r));
  return j;
}

void write_table(const std::vector<std::vector<std::string>>& rows, std::ostream& out) {
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c].empty() ? "-" : row[c];
      if (c + 1 < row.size()) cell.resize(std::max(width[c], std::size_t{1}) + 2, ' ');
      line += cell;
    }
    out << line << '\n';
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void emit(const std::vector<OutputRecord>& records, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json list = json::array();
    for (const auto& r : records) list.push_back(to_json(r));
    out << list.dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    for (std::size_t c = 0; c < kColumns.size(); ++c) out << (c ? "," : "") << kColumns[c];
    out << '\n';
    for (const auto& r : records) {
      const auto row = cells(r);
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c]);
      out << '\n';
    }
    return;
  }
  std::vector<std::vector<std::string>> rows{kColumns};
  for (const auto& r : records) rows.push_back(cells(r));
  write_table(rows, out);
}

json to_json(const CheckReport& r) {
  json j;
  j["check"] = r.check;
  j["expected"] = r.expected;
  j["estimate"] = finite_or_null(r.estimate);
  j["stderr"] = r.std_error;
  j["sigmas"] = r.sigmas ? finite_or_null(*r.sigmas) : json(nullptr);
  if (r.statistic) j["statistic"] = *r.statistic;
  j["pass"] = r.pass;
  return j;
}

void emit(const std::vector<CheckReport>& reports, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json list = json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    out << list.dump(2) << '\n';
    return;
  }
  std::vector<std::vector<std::string>> rows{{"check", "expected", "estimate", "stderr", "sigmas", "pass"}};
  for (const auto& r : reports) {
    rows.push_back({r.check, format_double(r.expected), format_double(r.estimate), format_double(r.std_error),
                    r.sigmas ? format_double(*r.sigmas) : "", r.pass ? "true" : "false"});
  }
  if (format == "csv") {
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c]);
      out << '\n';
    }
    return;
  }
  write_table(rows, out);
}

/// "3/2", "1.5" or "2".
double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw UsageError("bad number '" + text + "'");
      return v;
    }
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1), &used);
    if (used != text.size() - slash - 1 || den == 0.0) throw UsageError("bad number '" + text + "'");
    return num / den;
  } catch (const std::logic_error&) {
    throw UsageError("bad number '" + text + "'");
  }
}

std::string label(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

struct Options {
  int n = 0;
  std::string field = "complex";
  int rank_deficiency = 1;
  std::string convention = "A";
  std::string family;
  std::string alpha = "1";
  std::string beta = "2";
  std::string body;
  int dim = 0;
  std::string side = "1";
  std::int64_t samples = 0;
  std::uint64_t seed = 1;
  int chunks = 16;
  int workers = 1;
  int bins = 20;
  std::string suite = "all";
  std::string method = "ginibre";
  std::string format = "text";
  std::string out_path;
  bool spectra_only = false;
};

std::vector<OutputRecord> volume_records(const Options& o) {
  const Field field = parse_field(o.field);
  return {{.quantity = "volume", .n = o.n, .field = o.field, .exact = vol_mixed({o.n, field})}};
}

std::vector<OutputRecord> edge_records(const Options& o) {
  const Field field = parse_field(o.field);
  return {{.quantity = "edge",
           .n = o.n,
           .field = o.field,
           .rank = o.n - o.rank_deficiency,
           .exact = vol_edge({o.n, field}, o.rank_deficiency)}};
}

std::vector<OutputRecord> geometry_records(const Options& o) {
  const Field field = parse_field(o.field);
  const GeometrySummary g = geometry({o.n, field});
  auto exact = [&](const char* q, const ExactValue& v) {
    return OutputRecord{.quantity = q, .n = o.n, .field = o.field, .exact = v};
  };
  auto real = [&](const char* q, double v, double log10_v) {
    return OutputRecord{.quantity = q, .n = o.n, .field = o.field, .value = v, .log10_value = log10_v};
  };
  return {exact("outer_radius", g.outer_radius),
          exact("inner_radius", g.inner_radius),
          real("effective_radius", g.effective_radius, std::log10(g.effective_radius)),
          exact("gamma", g.gamma),
          real("chi1", g.chi1, g.log10_chi1),
          real("chi2", g.chi2, g.log10_chi2),
          real("chi", g.chi, g.log10_chi)};
}

std::vector<OutputRecord> reference_records(const Options& o) {
  const Body body = parse_body(o.body);
  const ExactValue side = ExactValue::parse(o.side);
  std::vector<OutputRecord> out{{.quantity = std::string(to_string(body)) + "_volume",
                                 .n = o.dim,
                                 .exact = reference_volume(body, o.dim, side)}};
  if (body != Body::Sphere) {
    out.push_back({.quantity = std::string(to_string(body)) + "_gamma",
                   .n = o.dim,
                   .exact = reference_gamma(body, o.dim, side)});
  }
  return out;
}

std::vector<OutputRecord> group_records(const Options& o) {
  const Family family = parse_family(o.family);
  const Convention conv = parse_convention(o.convention);
  return {{.quantity = std::string("vol_") + std::string(to_string(family)),
           .n = o.n,
           .convention = std::string(to_string(conv)),
           .exact = volume({family, o.n}, conv)}};
}

std::vector<OutputRecord> constants_records(const Options& o) {
  const double alpha = parse_real(o.alpha);
  const double beta = parse_real(o.beta);
  OutputRecord laguerre{.quantity = "laguerre_integral", .n = o.n, .alpha = label(alpha), .beta = label(beta)};
  OutputRecord norm{.quantity = "c_norm", .n = o.n, .alpha = label(alpha), .beta = label(beta)};
  if (const auto params = exact_params(o.n, alpha, beta)) {
    laguerre.exact = laguerre_integral(*params);
    norm.exact = c_norm(*params);
  } else {
    const double log_l = log_laguerre_integral(o.n, alpha, beta);
    const double log_c = log_c_norm(o.n, alpha, beta);
    laguerre.value = std::exp(log_l);
    laguerre.log10_value = log_l / std::numbers::ln10;
    norm.value = std::exp(log_c);
    norm.log10_value = log_c / std::numbers::ln10;
  }
  return {laguerre, norm};
}

void write_samples(const Options& o, std::ostream& out) {
  const Field field = parse_field(o.field);
  const bool partial_trace = o.method == "partial-trace";
  if (partial_trace && field != Field::Complex) throw UsageError("--method partial-trace needs --field complex");
  RandomStream rng(o.seed, 0);
  const std::int64_t count = o.samples > 0 ? o.samples : 1;
  for (std::int64_t i = 0; i < count; ++i) {
    const DensityMatrix rho = partial_trace ? sample_pure_partial_trace(o.n, rng) : sample_hs_density(o.n, field, rng);
    json j;
    j["n"] = o.n;
    j["field"] = o.field;
    j["spectrum"] = eigvals_hermitian(rho.matrix).values;
    if (!o.spectra_only) {
      std::vector<double> re, im;
      for (int r = 0; r < rho.size(); ++r) {
        for (int c = 0; c < rho.size(); ++c) {
          re.push_back(rho.matrix(r, c).real());
          im.push_back(rho.matrix(r, c).imag());
        }
      }
      j["matrix_re"] = re;
      j["matrix_im"] = im;
    }
    out << j.dump() << '\n';
  }
}

int run_verify(const Options& o, const CLI::App& cmd, std::ostream& out) {
  SuiteRequest request;
  request.suite = o.suite;
  if (cmd.count("--n")) request.n = o.n;
  if (cmd.count("--field")) request.field = parse_field(o.field);
  if (cmd.count("--alpha")) request.alpha = parse_real(o.alpha);
  if (cmd.count("--beta")) request.beta = parse_real(o.beta);
  request.bins = o.bins;
  request.config = {o.samples > 0 ? o.samples : 100000, o.seed, o.chunks, o.workers};
  const auto reports = run_suite(request);
  // verify defaults to JSON unless a format is given explicitly
  emit(reports, cmd.count("--format") ? o.format : "json", out);
  for (const auto& r : reports) {
    if (!r.pass) return 1;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert-Schmidt geometry of quantum state spaces", "hsvol"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> fields{"complex", "real"};
  const std::vector<std::string> formats{"text", "json", "csv"};
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember(formats));
    cmd->add_option("--out", o.out_path, "write output to PATH instead of stdout");
  };
  auto space = [&](CLI::App* cmd, bool required) {
    auto* n = cmd->add_option("--n", o.n, "Hilbert-space dimension N");
    if (required) n->required();
    cmd->add_option("--field", o.field, "complex or real")->check(CLI::IsMember(fields));
  };

  auto* volume_cmd = app.add_subcommand("volume", "HS volume of the set of states");
  space(volume_cmd, true);
  common(volume_cmd);

  auto* edge_cmd = app.add_subcommand("edge", "HS volume of the states of rank N - k");
  space(edge_cmd, true);
  edge_cmd->add_option("--rank-deficiency", o.rank_deficiency, "k, number of zero eigenvalues");
  common(edge_cmd);

  auto* geometry_cmd = app.add_subcommand("geometry", "radii and shape coefficients");
  space(geometry_cmd, true);
  common(geometry_cmd);

  auto* reference_cmd = app.add_subcommand("reference", "reference convex bodies");
  reference_cmd->add_option("--body", o.body, "ball, cube, simplex, diamond or sphere")
      ->required()
      ->check(CLI::IsMember({"ball", "cube", "simplex", "diamond", "sphere"}));
  reference_cmd->add_option("--dim", o.dim, "dimension")->required();
  reference_cmd->add_option("--side", o.side, "radius or side length, exact syntax (default 1)");
  common(reference_cmd);

  auto* group_cmd = app.add_subcommand("group", "volumes of groups and coset spaces");
  group_cmd->add_option("--family", o.family, "U, SU, O, SO, CP, RP, FlC or FlR")
      ->required()
      ->check(CLI::IsMember({"U", "SU", "O", "SO", "CP", "RP", "FlC", "FlR"}));
  group_cmd->add_option("--n", o.n, "group size, or k for projective spaces")->required();
  group_cmd->add_option("--convention", o.convention, "A, B or C")->check(CLI::IsMember({"A", "B", "C"}));
  common(group_cmd);

  auto* constants_cmd = app.add_subcommand("constants", "normalization constants C_N^(alpha,beta)");
  constants_cmd->add_option("--n", o.n, "number of eigenvalues")->required();
  constants_cmd->add_option("--alpha", o.alpha, "alpha > 0, e.g. 3/2");
  constants_cmd->add_option("--beta", o.beta, "beta > 0");
  common(constants_cmd);

  auto* sample_cmd = app.add_subcommand("sample", "HS-random density matrices as JSON lines");
  space(sample_cmd, true);
  sample_cmd->add_option("--samples", o.samples, "number of matrices (default 1)");
  sample_cmd->add_option("--seed", o.seed, "random seed");
  sample_cmd->add_option("--method", o.method, "ginibre or partial-trace")
      ->check(CLI::IsMember({"ginibre", "partial-trace"}));
  sample_cmd->add_flag("--spectra-only", o.spectra_only, "omit the matrices");
  sample_cmd->add_option("--out", o.out_path, "write output to PATH instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo checks of the closed forms");
  verify_cmd->add_option("--suite", o.suite, "purity, norm, hitmiss, fit or all")
      ->check(CLI::IsMember({"purity", "norm", "hitmiss", "fit", "all"}));
  space(verify_cmd, false);
  verify_cmd->add_option("--alpha", o.alpha, "alpha for the norm suite");
  verify_cmd->add_option("--beta", o.beta, "beta for the norm suite");
  verify_cmd->add_option("--samples", o.samples, "samples per check (default 100000)");
  verify_cmd->add_option("--seed", o.seed, "random seed");
  verify_cmd->add_option("--chunks", o.chunks, "independent random streams");
  verify_cmd->add_option("--workers", o.workers, "worker threads; output does not depend on it");
  verify_cmd->add_option("--bins", o.bins, "histogram bins for the fit suite");
  common(verify_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.out_path.empty()) {
    file.open(o.out_path);
    if (!file) {
      err << "error: cannot open " << o.out_path << '\n';
      return 2;
    }
    sink = &file;
  }

  try {
    if (*volume_cmd) emit(volume_records(o), o.format, *sink);
    if (*edge_cmd) emit(edge_records(o), o.format, *sink);
    if (*geometry_cmd) emit(geometry_records(o), o.format, *sink);
    if (*reference_cmd) emit(reference_records(o), o.format, *sink);
    if (*group_cmd) emit(group_records(o), o.format, *sink);
    if (*constants_cmd) emit(constants_records(o), o.format, *sink);
    if (*sample_cmd) write_samples(o, *sink);
    if (*verify_cmd) return run_verify(o, *verify_cmd, *sink);
  } catch (const std::logic_error& e) {  // domain_error, invalid_argument
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace hsvol::cli
