#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cli/experiment.hpp"

namespace phasync::cli {

inline constexpr std::string_view kCsvHeader =
    "n,p,sigma,seed,trial,method,loss,iterations,residual,converged,wall_ms,theory_risk";

/// Shortest decimal string that parses back to exactly x ('.' separator,
/// locale independent). NaN prints as "nan".
std::string format_double(double x);

std::string csv_row(const ExperimentRecord& r);

/// Inverse of csv_row. Throws kInvalidArgument on malformed input.
ExperimentRecord parse_csv_row(std::string_view line);

/// "# summary n=... p=... sigma=... method=... trials=... mean_loss=...
/// std_error=... theory_risk=... ratio=..."
std::string summary_line(const Summary& s);

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records,
               const std::vector<Summary>& summaries);
void write_json(std::ostream& out, const std::vector<ExperimentRecord>& records,
                const std::vector<Summary>& summaries);

}  // namespace phasync::cli
