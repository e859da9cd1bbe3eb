#include "sphericity/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sphericity/distributions.hpp"
#include "sphericity/errors.hpp"
#include "sphericity/io.hpp"
#include "sphericity/montecarlo.hpp"
#include "sphericity/rank_tests.hpp"
#include "sphericity/report.hpp"

namespace sphericity::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string text_value(const std::optional<double>& x) { return x ? format_number(*x) : "NA"; }

Json json_value(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open '" + path + "' for writing");
  return f;
}

/// Writes to `path`, or to `fallback` when the path is empty.
void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream f = open_output(path);
  body(f);
  f.close();
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

// ---------------------------------------------------------------- test

struct TestOptions {
  std::string input;
  std::string method = "all";
  double alpha = kDefaultAlpha;
  std::string format = "text";
  bool header = false;
};

int cmd_test(const TestOptions& opt, std::ostream& out) {
  std::ifstream in(opt.input, std::ios::binary);
  if (!in) throw InvalidInput("cannot open input '" + opt.input + "'");
  const SampleMatrix x(read_matrix_csv(in, opt.header));

  std::vector<Method> methods;
  if (opt.method == "all") {
    methods = {Method::SR, Method::SK, Method::John};
  } else {
    methods = {parse_method(opt.method)};
  }
  const bool rank = std::any_of(methods.begin(), methods.end(), [](Method m) { return m != Method::John; });
  if (rank && x.n() < 4)
    throw InvalidInput("the SR and SK tests: requires n \u2265 4 (got n = " + std::to_string(x.n()) + ")");

  std::vector<TestResult> results;
  std::optional<RankTestPair> pair;
  for (Method m : methods) {
    if (m == Method::John) {
      results.push_back(john_statistic(x));
    } else {
      if (!pair) pair = rank_tests(x, opt.alpha);
      results.push_back(m == Method::SR ? pair->spearman : pair->kendall);
    }
  }

  if (opt.format == "json") {
    Json doc{{"n", x.n()}, {"p", x.p()}, {"alpha", opt.alpha}, {"results", Json::array()}};
    for (const auto& r : results) {
      doc["results"].push_back({{"method", to_string(r.method)},
                                {"n", r.n},
                                {"p", r.p},
                                {"statistic", r.statistic},
                                {"sigma0", json_value(r.sigma0)},
                                {"z", json_value(r.z)},
                                {"p_value", json_value(r.p_value)},
                                {"reject", r.reject ? Json(*r.reject) : Json(nullptr)},
                                {"tie_count", r.tie_count}});
    }
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      out << "method=" << to_string(r.method) << " n=" << r.n << " p=" << r.p
          << " statistic=" << format_number(r.statistic) << " sigma0=" << text_value(r.sigma0)
          << " z=" << text_value(r.z) << " p_value=" << text_value(r.p_value)
          << " reject=" << (r.reject ? (*r.reject ? "yes" : "no") : "NA") << " tie_count=" << r.tie_count << '\n';
    }
  }
  return kSuccess;
}

// ------------------------------------------------------------ simulate

struct SimulateOptions {
  std::string config;
  std::string out;
  std::string format;
  std::string records;
  std::optional<int> reps;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

void write_records(const McReport& report, std::ostream& f) {
  f << "scenario,n,p,v,rep,method,statistic,sigma0,z,reject\n";
  for (const auto& rec : report.records) {
    for (const auto& o : rec.outcomes) {
      f << to_string(rec.scenario) << ',' << rec.n << ',' << rec.p << ',' << format_number(rec.v) << ',' << rec.rep
        << ',' << to_string(o.method) << ',' << format_number(o.statistic) << ','
        << (o.sigma0 ? format_number(*o.sigma0) : "") << ',' << (o.z ? format_number(*o.z) : "") << ','
        << (o.method == Method::John ? "" : (o.reject ? "1" : "0")) << '\n';
    }
  }
}

int report_failures(const McReport& report, std::ostream& err) {
  for (const auto& f : report.failures) {
    err << "error: cell scenario=" << to_string(f.scenario) << " n=" << f.n << " p=" << f.p
        << " v=" << format_number(f.v) << " failed at replication " << f.rep << ": " << f.message << '\n';
  }
  return kInternalError;
}

// One line per grid cell; the methods of a cell are adjacent rows.
void print_cell_summaries(const McReport& report, std::size_t methods, std::ostream& os) {
  for (std::size_t i = 0; i < report.rows.size(); i += methods) {
    const CellSummary& c = report.rows[i];
    os << "scenario=" << to_string(c.scenario) << " n=" << c.n << " p=" << c.p << " v=" << format_number(c.v)
       << " reps=" << c.reps;
    for (std::size_t m = i; m < i + methods && m < report.rows.size(); ++m) {
      const CellSummary& r = report.rows[m];
      const std::string name(to_string(r.method));
      os << ' ' << name << ":rate=" << text_value(r.rejection_rate) << ' ' << name
         << ":mean_sd_ratio=" << text_value(r.mean_sd_ratio) << ' ' << name
         << ":variance_ratio=" << text_value(r.variance_ratio);
    }
    os << '\n';
  }
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
  std::ifstream in(opt.config, std::ios::binary);
  if (!in) throw InvalidInput("cannot open config '" + opt.config + "'");
  ExperimentConfig cfg = parse_experiment_config(in);
  if (opt.reps) cfg.reps = *opt.reps;
  if (opt.seed) cfg.master_seed = *opt.seed;
  if (opt.threads) cfg.threads = *opt.threads;
  cfg.keep_records = !opt.records.empty();
  validate(cfg);

  ReportFormat format = ReportFormat::CSV;
  if (!opt.format.empty()) {
    format = parse_report_format(opt.format);
  } else if (opt.out.size() >= 5 && opt.out.ends_with(".json")) {
    format = ReportFormat::JSON;
  }

  const McReport report = run_experiment(cfg);
  if (!report.complete()) return report_failures(report, err);

  with_output(opt.out, out, [&](std::ostream& os) { emit_report(report, format, os); });
  if (!opt.records.empty()) with_output(opt.records, out, [&](std::ostream& os) { write_records(report, os); });
  // Summaries go to stdout only when it is not carrying the report itself.
  print_cell_summaries(report, cfg.methods.size(), opt.out.empty() ? err : out);
  return kSuccess;
}

// --------------------------------------------------------------- power

struct PowerOptions {
  int n = 0;
  int p = 0;
  double v = 0.0;
  double alpha = kDefaultAlpha;
  std::string format = "text";
};

int cmd_power(const PowerOptions& opt, std::ostream& out) {
  if (opt.n < 2) throw InvalidInput("--n must be >= 2");
  if (opt.p < 2) throw InvalidInput("--p must be >= 2");
  if (!(opt.v >= 0.0 && opt.v <= 1.0)) throw InvalidInput("--v must lie in [0, 1]");
  if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw InvalidInput("--alpha must lie in (0, 1)");

  const ShapeSpec shape = shape_from_v(opt.p, opt.v);
  const double s0 = sigma0(opt.n, opt.p);
  const double s1 = sigma1(opt.n, shape);
  const double power = analytic_power(opt.n, shape, opt.alpha);

  if (opt.format == "json") {
    Json doc{{"n", opt.n},       {"p", opt.p},   {"v", opt.v},          {"alpha", opt.alpha},
             {"tr_D2", shape.tr_D2}, {"sigma0", s0}, {"sigma1", s1}, {"power", power}};
    out << doc.dump(2) << '\n';
  } else {
    out << "n=" << opt.n << '\n'
        << "p=" << opt.p << '\n'
        << "v=" << format_number(opt.v) << '\n'
        << "alpha=" << format_number(opt.alpha) << '\n'
        << "tr_D2=" << format_number(shape.tr_D2) << '\n'
        << "sigma0=" << format_number(s0) << '\n'
        << "sigma1=" << format_number(s1) << '\n'
        << "power=" << format_number(power) << '\n';
  }
  return kSuccess;
}

// ------------------------------------------------------------ diagnose

struct DiagnoseOptions {
  std::string scenario = "I";
  int n = 20;
  std::vector<int> p_list;
  int reps = 2000;
  std::uint64_t seed = 0;
  int threads = 0;
  std::vector<std::string> methods{"sr", "sk"};
  std::string out;
};

int cmd_diagnose(const DiagnoseOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.p_list.empty()) throw InvalidInput("--p-list must name at least one dimension");
  ExperimentConfig cfg;
  cfg.scenarios = {ScenarioTemplate{parse_scenario(opt.scenario)}};
  cfg.n_list = {opt.n};
  cfg.p_list = opt.p_list;
  cfg.v_list = {0.0};
  cfg.reps = opt.reps;
  cfg.master_seed = opt.seed;
  cfg.threads = opt.threads;
  cfg.methods.clear();
  for (const auto& m : opt.methods) cfg.methods.push_back(parse_method(m));
  validate(cfg);

  const McReport report = run_experiment(cfg);
  if (!report.complete()) return report_failures(report, err);
  with_output(opt.out, out, [&](std::ostream& os) { emit_diagnostics_csv(report, os); });
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-dimensional rank tests for sphericity", "sphericity"};
  app.require_subcommand(1);

  TestOptions test_opt;
  auto* test = app.add_subcommand("test", "Run the SR/SK rank tests and John's statistic on a data file");
  test->add_option("--input", test_opt.input, "CSV file, rows are observations")->required();
  test->add_option("--method", test_opt.method, "sr, sk, john or all")
      ->check(CLI::IsMember({"sr", "sk", "john", "all"}, CLI::ignore_case));
  test->add_option("--alpha", test_opt.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
  test->add_option("--format", test_opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  test->add_flag("--header", test_opt.header, "First non-blank line is a header");

  SimulateOptions sim_opt;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo size/power experiment from a JSON config");
  simulate->add_option("--config", sim_opt.config, "JSON experiment config")->required();
  simulate->add_option("--out", sim_opt.out, "Report file (stdout when omitted)");
  simulate->add_option("--format", sim_opt.format, "csv or json (default: from --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--records", sim_opt.records, "Also write per-replication records as CSV");
  simulate->add_option("--reps", sim_opt.reps, "Override replications per cell");
  simulate->add_option("--seed", sim_opt.seed, "Override master seed");
  simulate->add_option("--threads", sim_opt.threads, "Worker threads (0: all cores)");

  PowerOptions pow_opt;
  auto* power = app.add_subcommand("power", "Asymptotic SR power for the diagonal spike alternative");
  power->add_option("--n", pow_opt.n, "Sample size")->required();
  power->add_option("--p", pow_opt.p, "Dimension")->required();
  power->add_option("--v", pow_opt.v, "Fraction of inflated coordinates")->required();
  power->add_option("--alpha", pow_opt.alpha, "Significance level");
  power->add_option("--format", pow_opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  DiagnoseOptions diag_opt;
  auto* diagnose = app.add_subcommand("diagnose", "Null mean-sd and variance ratios across dimensions");
  diagnose->add_option("--scenario", diag_opt.scenario, "I, II, III, IV or V");
  diagnose->add_option("--n", diag_opt.n, "Sample size");
  diagnose->add_option("--p-list", diag_opt.p_list, "Comma-separated dimensions")->delimiter(',')->required();
  diagnose->add_option("--reps", diag_opt.reps, "Replications per dimension");
  diagnose->add_option("--seed", diag_opt.seed, "Master seed");
  diagnose->add_option("--threads", diag_opt.threads, "Worker threads (0: all cores)");
  diagnose->add_option("--methods", diag_opt.methods, "Comma-separated methods")->delimiter(',');
  diagnose->add_option("--out", diag_opt.out, "CSV file (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (test->parsed()) return cmd_test(test_opt, out);
    if (simulate->parsed()) return cmd_simulate(sim_opt, out, err);
    if (power->parsed()) return cmd_power(pow_opt, out);
    if (diagnose->parsed()) return cmd_diagnose(diag_opt, out, err);
  } catch (const InsufficientSample& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DegenerateInput& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace sphericity::cli
