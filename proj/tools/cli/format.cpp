#include "cli/format.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "phasync/error.hpp"

namespace phasync::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_row(const ExperimentRecord& r) {
  std::string row;
  row += std::to_string(r.n) + ',';
  row += format_double(r.p) + ',';
  row += format_double(r.sigma) + ',';
  row += std::to_string(r.seed) + ',';
  row += std::to_string(r.trial) + ',';
  row += std::string(to_string(r.method)) + ',';
  row += format_double(r.loss) + ',';
  row += std::to_string(r.iterations) + ',';
  row += format_double(r.residual) + ',';
  row += (r.converged ? "true" : "false");
  row += ',';
  row += format_double(r.wall_ms) + ',';
  row += format_double(r.theory_risk);
  return row;
}

namespace {

template <typename T>
T parse_number(std::string_view field) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw Error(ErrorKind::kInvalidArgument, "bad numeric CSV field '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

ExperimentRecord parse_csv_row(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 12) {
    throw Error(ErrorKind::kInvalidArgument, "CSV row must have 12 fields");
  }
  ExperimentRecord r;
  r.n = parse_number<std::size_t>(fields[0]);
  r.p = parse_number<double>(fields[1]);
  r.sigma = parse_number<double>(fields[2]);
  r.seed = parse_number<std::uint64_t>(fields[3]);
  r.trial = parse_number<int>(fields[4]);
  r.method = parse_method(fields[5]);
  r.loss = parse_number<double>(fields[6]);
  r.iterations = parse_number<int>(fields[7]);
  r.residual = parse_number<double>(fields[8]);
  if (fields[9] != "true" && fields[9] != "false") {
    throw Error(ErrorKind::kInvalidArgument, "converged must be true or false");
  }
  r.converged = fields[9] == "true";
  r.wall_ms = parse_number<double>(fields[10]);
  r.theory_risk = parse_number<double>(fields[11]);
  return r;
}

std::string summary_line(const Summary& s) {
  return "# summary n=" + std::to_string(s.n) + " p=" + format_double(s.p) +
         " sigma=" + format_double(s.sigma) + " method=" + std::string(to_string(s.method)) +
         " trials=" + std::to_string(s.trials) + " mean_loss=" + format_double(s.mean_loss) +
         " std_error=" + format_double(s.std_error) + " theory_risk=" + format_double(s.theory_risk) +
         " ratio=" + format_double(s.ratio);
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records,
               const std::vector<Summary>& summaries) {
  out << kCsvHeader << '\n';
  for (const ExperimentRecord& r : records) out << csv_row(r) << '\n';
  for (const Summary& s : summaries) out << summary_line(s) << '\n';
}

namespace {

nlohmann::ordered_json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr);
}

}  // namespace

void write_json(std::ostream& out, const std::vector<ExperimentRecord>& records,
                const std::vector<Summary>& summaries) {
  nlohmann::ordered_json doc;
  doc["records"] = nlohmann::ordered_json::array();
  for (const ExperimentRecord& r : records) {
    doc["records"].push_back({{"n", r.n},
                              {"p", r.p},
                              {"sigma", r.sigma},
                              {"seed", r.seed},
                              {"trial", r.trial},
                              {"method", to_string(r.method)},
                              {"loss", r.loss},
                              {"iterations", r.iterations},
                              {"residual", r.residual},
                              {"converged", r.converged},
                              {"wall_ms", r.wall_ms},
                              {"theory_risk", r.theory_risk}});
  }
  doc["summary"] = nlohmann::ordered_json::array();
  for (const Summary& s : summaries) {
    doc["summary"].push_back({{"n", s.n},
                              {"p", s.p},
                              {"sigma", s.sigma},
                              {"method", to_string(s.method)},
                              {"trials", s.trials},
                              {"mean_loss", s.mean_loss},
                              {"std_error", s.std_error},
                              {"theory_risk", s.theory_risk},
                              {"ratio", number_or_null(s.ratio)}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace phasync::cli
