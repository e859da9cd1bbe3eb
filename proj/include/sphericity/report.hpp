#pragma once

// CSV / JSON serialization of Monte Carlo reports. One row per
// (scenario, n, p, v, method):
//
//   scenario,n,p,v,method,reps,rejection_rate,mean_sd_ratio,variance_ratio,alpha,master_seed
//
// Absent values are empty CSV fields and JSON nulls. Reals use the shortest
// representation that round-trips, independent of the global locale.

#include <ostream>
#include <string>
#include <string_view>

#include "sphericity/montecarlo.hpp"

namespace sphericity {

enum class ReportFormat { CSV, JSON };

ReportFormat parse_report_format(std::string_view name);

/// Shortest round-trip decimal text for a finite double.
std::string format_number(double x);

/// Throws InvalidInput for a report with failed cells and std::runtime_error
/// when the sink goes bad.
void emit_report(const McReport& report, ReportFormat format, std::ostream& out);

/// Plot-ready series: scenario,n,p,method,mean_sd_ratio,variance_ratio.
void emit_diagnostics_csv(const McReport& report, std::ostream& out);

}  // namespace sphericity
