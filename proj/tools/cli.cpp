#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "noisemax/coeffs.hpp"
#include "noisemax/covar.hpp"
#include "noisemax/errors.hpp"
#include "noisemax/extremes.hpp"
#include "noisemax/format.hpp"
#include "noisemax/report_io.hpp"
#include "noisemax/selftest.hpp"

namespace noisemax::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything a run depends on. threads and out never influence file content.
struct RunConfig {
  std::string subcommand;
  std::string model_text;
  std::optional<double> alpha, c0, beta, cut;
  std::optional<std::string> family;
  std::vector<std::int64_t> n_list;
  std::uint64_t reps = 4000;
  std::uint64_t seed = 1;
  int oversample = kDefaultOversample;
  unsigned threads = 1;
  std::string out;
  std::string format;

  // conditions
  double t_max = 0.025;
  double eps_budget = 0.01;
  double big_t = 20.0;
  double eps = 0.5;
  double margin = 1e-3;
  int per_unit = 10;

  // covariance
  std::optional<double> cov_t_max;

  // selftest
  bool perturb = false;
};

CoefficientModel build_model(const RunConfig& c) {
  CoefficientModel m;
  bool cut_given = c.cut.has_value();
  if (!c.model_text.empty()) {
    m = parse_model(c.model_text);
    cut_given = cut_given || c.model_text.find("cut=") != std::string::npos;
  }
  if (c.family) m.family = parse_family(*c.family);
  if (c.alpha) m.alpha = *c.alpha;
  if (c.c0) m.c0 = *c.c0;
  if (c.beta) m.beta = *c.beta;
  m.cut = c.cut ? *c.cut : (cut_given ? m.cut : default_cut(m.family));
  if (m.alpha >= 1.0) {
    throw UsageError("--alpha must be < 1: the Gumbel limit for the maximum of 1/f^alpha noise "
                     "holds only for alpha < 1 (got " + shortest(m.alpha) + ")");
  }
  m.validate();
  return m;
}

std::string join_n(const std::vector<std::int64_t>& ns) {
  std::string s;
  for (std::size_t i = 0; i < ns.size(); ++i) s += (i ? "," : "") + std::to_string(ns[i]);
  return s;
}

std::string resolve_format(const RunConfig& c, const std::string& fallback) {
  if (!c.format.empty()) return c.format;
  if (c.out.size() >= 4 && c.out.ends_with(".csv")) return "csv";
  if (c.out.size() >= 5 && c.out.ends_with(".json")) return "json";
  return fallback;
}

Provenance base_provenance(const RunConfig& c, const CoefficientModel& m,
                           const std::string& format) {
  return {{"subcommand", c.subcommand},
          {"model", to_string(m)},
          {"n", join_n(c.n_list)},
          {"format", format}};
}

template <typename Writer>
int emit(const RunConfig& c, std::ostream& out, std::ostream& err, Writer&& write) {
  if (c.out.empty() || c.out == "-") {
    write(out);
    return kExitOk;
  }
  std::ostringstream buffer;
  write(buffer);
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open output file " << c.out << '\n';
    return kExitRuntime;
  }
  file << buffer.str();
  if (!file.flush()) {
    err << "error: failed writing " << c.out << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

void require_n(const RunConfig& c, std::int64_t min_n) {
  if (c.n_list.empty()) throw UsageError("--n is required");
  for (auto n : c.n_list) {
    if (n < min_n) throw UsageError("--n must be >= " + std::to_string(min_n));
  }
}

int cmd_gumbel(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const CoefficientModel m = build_model(c);
  require_n(c, 2);
  if (c.reps < 100) throw UsageError("--reps must be >= 100");
  if (c.oversample < 4) throw UsageError("--oversample must be >= 4");
  const std::string format = resolve_format(c, "json");

  Provenance prov = base_provenance(c, m, format);
  prov.emplace_back("reps", std::to_string(c.reps));
  prov.emplace_back("seed", std::to_string(c.seed));
  prov.emplace_back("oversample", std::to_string(c.oversample));

  std::vector<GumbelReport> reports;
  for (auto n : c.n_list) {
    reports.push_back(report(m, n, c.reps, c.seed, {c.oversample, c.threads, 0.0}));
  }
  return emit(c, out, err, [&](std::ostream& os) {
    if (format == "csv") {
      write_gumbel_csv(os, reports, prov);
    } else {
      write_gumbel_json(os, reports, prov);
    }
  });
}

ConditionReport empty_range_record(int condition, const CoefficientModel& m, std::int64_t n,
                                   std::string note) {
  ConditionReport r;
  r.condition = condition;
  r.n = n;
  r.alpha = m.alpha;
  r.family = std::string(to_string(m.family));
  r.pass = false;
  r.note = std::move(note);
  return r;
}

int cmd_conditions(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const CoefficientModel m = build_model(c);
  require_n(c, 1);
  if (!(c.t_max > 0 && c.t_max <= 1)) throw UsageError("--t-max must lie in (0, 1]");
  if (!(c.big_t >= 1)) throw UsageError("--T must be >= 1");
  if (!(c.eps > 0)) throw UsageError("--eps must be positive");
  if (c.per_unit < 1) throw UsageError("--per-unit must be >= 1");
  const std::string format = resolve_format(c, "json");

  Provenance prov = base_provenance(c, m, format);
  prov.emplace_back("t_max", shortest(c.t_max));
  prov.emplace_back("eps_budget", shortest(c.eps_budget));
  prov.emplace_back("T", shortest(c.big_t));
  prov.emplace_back("eps", shortest(c.eps));
  prov.emplace_back("margin", shortest(c.margin));
  prov.emplace_back("per_unit", std::to_string(c.per_unit));

  std::vector<ConditionReport> records;
  for (auto n : c.n_list) {
    const double half = 0.5 * static_cast<double>(n);
    records.push_back(check_condition1(m, n, c.t_max, c.eps_budget));
    if (c.big_t <= half) {
      records.push_back(check_condition2(m, n, c.big_t, c.eps, c.per_unit));
    } else {
      records.push_back(empty_range_record(2, m, n, "empty range: T > n/2"));
    }
    if (c.eps < std::max(half, 1.0)) {
      records.push_back(check_condition3(m, n, c.eps, c.margin, c.per_unit));
    } else {
      records.push_back(empty_range_record(3, m, n, "empty range: eps >= max(n/2, 1)"));
    }
  }
  return emit(c, out, err, [&](std::ostream& os) {
    if (format == "csv") {
      write_conditions_csv(os, records, prov);
    } else {
      write_conditions_json(os, records, prov);
    }
  });
}

int cmd_covariance(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const CoefficientModel m = build_model(c);
  require_n(c, 1);
  if (c.n_list.size() != 1) throw UsageError("covariance takes exactly one --n");
  if (c.per_unit < 1) throw UsageError("--per-unit must be >= 1");
  if (c.cov_t_max && !(*c.cov_t_max >= 0)) throw UsageError("--t-max must be non-negative");
  const std::int64_t n = c.n_list.front();
  const std::optional<double> t_max =
      c.cov_t_max ? std::optional(std::min(*c.cov_t_max, 0.5 * static_cast<double>(n)))
                  : std::nullopt;
  const std::string format = resolve_format(c, "csv");

  Provenance prov = base_provenance(c, m, format);
  prov.emplace_back("per_unit", std::to_string(c.per_unit));
  prov.emplace_back("t_max", shortest(t_max.value_or(0.5 * static_cast<double>(n))));

  const CovarianceProfile p = make_profile(m, n, c.per_unit, t_max);
  return emit(c, out, err, [&](std::ostream& os) {
    if (format == "json") {
      write_covariance_json(os, p, prov);
    } else {
      write_covariance_csv(os, p, prov);
    }
  });
}

int cmd_selftest(const RunConfig& c, std::ostream& out, std::ostream&) {
  SelfTestOptions opts;
  if (!c.n_list.empty()) opts.n = c.n_list.front();
  if (opts.n < 1) throw UsageError("--n must be >= 1");
  opts.seed = c.seed;
  opts.perturb = c.perturb;
  const auto cases = run_selftest(opts);
  print_selftest(out, cases);
  const bool ok = std::ranges::all_of(cases, [](const SelfTestCase& s) { return s.pass; });
  out << (ok ? "all checks passed" : "SELFTEST FAILED") << '\n';
  return ok ? kExitOk : kExitRuntime;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maxima of Gaussian 1/f^alpha noise: simulation and covariance checks", "noisemax"};
  app.set_config("--config", "", "Flat key=value file; command-line flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  RunConfig c;
  double alpha = 0, c0 = 1, beta = 0, cut = 1, cov_t_max = 0;
  std::string family;
  auto* o_alpha = app.add_option("--alpha", alpha, "Regular-variation index, must be < 1");
  auto* o_family = app.add_option("--family", family, "constant | logpower");
  auto* o_c0 = app.add_option("--c0", c0, "Scale of the slowly varying part");
  auto* o_beta = app.add_option("--beta", beta, "Log power (logpower family)");
  auto* o_cut = app.add_option("--cut", cut, "Monotonization cut A");
  app.add_option("--model", c.model_text, "Model as key=value text");
  app.add_option("--n", c.n_list, "Degree(s), comma separated")->delimiter(',');
  app.add_option("--reps", c.reps, "Replicates per degree");
  app.add_option("--seed", c.seed, "Master seed");
  app.add_option("--oversample", c.oversample, "Grid oversampling factor (>= 4)");
  app.add_option("--threads", c.threads, "Worker threads (does not affect output)");
  app.add_option("--out", c.out, "Output file (stdout if omitted)");
  app.add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--t-max", cov_t_max, "conditions: condition-1 range; covariance: tabulation range");
  app.add_option("--eps-budget", c.eps_budget, "Condition-1 budget for sup |eps_n(t)|/t^2");
  app.add_option("--T", c.big_t, "Condition-2 lower end of the t range");
  app.add_option("--eps", c.eps, "Condition-2 bound and condition-3 lower end");
  app.add_option("--margin", c.margin, "Condition-3 margin below 1");
  app.add_option("--per-unit", c.per_unit, "Lattice points per unit of rescaled time");
  app.add_flag("--inject-perturbation", c.perturb, "selftest: corrupt outputs (test hook)")
      ->group("");

  auto* gumbel = app.add_subcommand("gumbel", "Gumbel report of normalized maxima");
  auto* conditions = app.add_subcommand("conditions", "Check the three covariance conditions");
  auto* covariance = app.add_subcommand("covariance", "Tabulate rho_n");
  auto* selftest = app.add_subcommand("selftest", "Run the small-n oracle suite");
  for (auto* sub : {gumbel, conditions, covariance, selftest}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (o_alpha->count()) c.alpha = alpha;
  if (o_family->count()) c.family = family;
  if (o_c0->count()) c.c0 = c0;
  if (o_beta->count()) c.beta = beta;
  if (o_cut->count()) c.cut = cut;
  if (app.get_option("--t-max")->count()) {
    c.t_max = cov_t_max;
    c.cov_t_max = cov_t_max;
  }
  if (c.threads == 0) c.threads = std::max(1u, std::thread::hardware_concurrency());

  try {
    if (gumbel->parsed()) {
      c.subcommand = "gumbel";
      if (!o_alpha->count() && c.model_text.empty()) throw UsageError("--alpha is required");
      return cmd_gumbel(c, out, err);
    }
    if (conditions->parsed()) {
      c.subcommand = "conditions";
      if (!o_alpha->count() && c.model_text.empty()) throw UsageError("--alpha is required");
      return cmd_conditions(c, out, err);
    }
    if (covariance->parsed()) {
      c.subcommand = "covariance";
      if (!o_alpha->count() && c.model_text.empty()) throw UsageError("--alpha is required");
      return cmd_covariance(c, out, err);
    }
    c.subcommand = "selftest";
    return cmd_selftest(c, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace noisemax::cli
