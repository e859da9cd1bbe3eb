#include "sphericity/report.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sphericity/errors.hpp"

namespace sphericity {

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv" || name == "CSV") return ReportFormat::CSV;
  if (name == "json" || name == "JSON") return ReportFormat::JSON;
  throw InvalidInput("unknown report format '" + std::string(name) + "' (expected csv or json)");
}

std::string format_number(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string optional_field(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

nlohmann::ordered_json optional_json(const std::optional<double>& x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
}

void require_complete(const McReport& report) {
  if (!report.complete())
    throw InvalidInput("report has " + std::to_string(report.failures.size()) + " failed cell(s)");
}

void check_sink(const std::ostream& out) {
  if (!out) throw std::runtime_error("failed writing report output");
}

}  // namespace

void emit_report(const McReport& report, ReportFormat format, std::ostream& out) {
  require_complete(report);
  if (format == ReportFormat::CSV) {
    out << "scenario,n,p,v,method,reps,rejection_rate,mean_sd_ratio,variance_ratio,alpha,master_seed\n";
    for (const auto& r : report.rows) {
      out << to_string(r.scenario) << ',' << r.n << ',' << r.p << ',' << format_number(r.v) << ','
          << to_string(r.method) << ',' << r.reps << ',' << optional_field(r.rejection_rate) << ','
          << optional_field(r.mean_sd_ratio) << ',' << optional_field(r.variance_ratio) << ','
          << format_number(report.alpha) << ',' << report.master_seed << '\n';
    }
  } else {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"scenario", to_string(r.scenario)},
                      {"n", r.n},
                      {"p", r.p},
                      {"v", r.v},
                      {"method", to_string(r.method)},
                      {"reps", r.reps},
                      {"rejection_rate", optional_json(r.rejection_rate)},
                      {"mean_sd_ratio", optional_json(r.mean_sd_ratio)},
                      {"variance_ratio", optional_json(r.variance_ratio)},
                      {"alpha", report.alpha},
                      {"master_seed", report.master_seed}});
    }
    out << rows.dump(2) << '\n';
  }
  check_sink(out);
}

void emit_diagnostics_csv(const McReport& report, std::ostream& out) {
  require_complete(report);
  out << "scenario,n,p,method,mean_sd_ratio,variance_ratio\n";
  for (const auto& r : report.rows) {
    out << to_string(r.scenario) << ',' << r.n << ',' << r.p << ',' << to_string(r.method) << ','
        << optional_field(r.mean_sd_ratio) << ',' << optional_field(r.variance_ratio) << '\n';
  }
  check_sink(out);
}

}  // namespace sphericity
