#include "hpoly/records.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "hpoly/errors.hpp"
#include "hpoly/polynomial_io.hpp"

namespace hpoly {

namespace {

std::string format_6g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

template <typename Int>
Int parse_integer(std::string_view text, std::size_t line) {
  Int value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ParseError(line, "invalid integer '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string format_records(const std::vector<ExperimentRecord>& records) {
  std::string out(kRecordHeader);
  out += '\n';
  for (const auto& rec : records) {
    out += std::to_string(rec.m) + ',' + std::to_string(rec.n) + ',' + format_17g(rec.r) + ',' +
           std::to_string(rec.seed) + ',' + std::string(to_string(rec.source)) + ',' + format_17g(rec.coeff_norm_r) +
           ',' + format_17g(rec.sup_lower) + ',' + format_17g(rec.sup_upper) + ',' + format_17g(rec.ratio) + ',' +
           format_17g(rec.ratio_conservative) + '\n';
  }
  return out;
}

std::vector<ExperimentRecord> parse_records(std::string_view csv) {
  std::vector<ExperimentRecord> out;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!csv.empty()) {
    const auto eol = csv.find('\n');
    std::string_view line = csv.substr(0, eol);
    csv = eol == std::string_view::npos ? std::string_view{} : csv.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kRecordHeader) throw ParseError(line_no, "unexpected record header");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 10) throw ParseError(line_no, "expected 10 fields, got " + std::to_string(fields.size()));
    auto real = [&](std::string_view f) {
      try {
        return parse_double(f);
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.what());
      }
    };
    ExperimentRecord rec;
    rec.m = parse_integer<int>(fields[0], line_no);
    rec.n = parse_integer<int>(fields[1], line_no);
    rec.r = real(fields[2]);
    rec.seed = parse_integer<std::uint64_t>(fields[3], line_no);
    try {
      rec.source = parse_record_source(fields[4]);
    } catch (const DomainError& e) {
      throw ParseError(line_no, e.what());
    }
    rec.coeff_norm_r = real(fields[5]);
    rec.sup_lower = real(fields[6]);
    rec.sup_upper = real(fields[7]);
    rec.ratio = real(fields[8]);
    rec.ratio_conservative = real(fields[9]);
    out.push_back(rec);
  }
  if (!header_seen) throw ParseError(0, "missing record header");
  return out;
}

std::string format_fit_summary(const ScalingFit& fit) {
  std::ostringstream out;
  out << "slope = " << format_6g(fit.slope) << '\n'
      << "intercept = " << format_6g(fit.intercept) << '\n'
      << "residual_rms = " << format_6g(fit.residual_rms) << '\n'
      << "predicted_exponent = " << format_6g(fit.predicted_exponent) << '\n'
      << "n_min = " << fit.n_values.front() << '\n'
      << "n_max = " << fit.n_values.back() << '\n'
      << "samples_per_n = " << fit.samples_per_n << '\n'
      << "statistic = " << fit.statistic << '\n';
  return out.str();
}

std::string format_ksz_rows(const ksz::SupNormStatistic& stat) {
  std::string out(kKszHeader);
  out += '\n';
  for (const auto& row : stat.samples) {
    out += std::to_string(row.index) + ',' + std::to_string(row.seed) + ',' + format_17g(row.estimate.lower) + ',' +
           format_17g(row.estimate.upper) + ',' + format_17g(row.estimate.gap()) + ',' + format_17g(row.vertex_max) +
           ',' + format_17g(row.coeff_norm_1) + ',' + (row.estimate.method.grid_skipped ? "1" : "0") + '\n';
  }
  return out;
}

std::string format_ksz_summary(int m, int n, ScalarField field, const ksz::SupNormStatistic& stat) {
  std::size_t skipped = 0;
  for (const auto& row : stat.samples) skipped += row.estimate.method.grid_skipped ? 1 : 0;
  std::ostringstream out;
  out << "m = " << m << '\n'
      << "n = " << n << '\n'
      << "field = " << to_string(field) << '\n'
      << "samples = " << stat.samples.size() << '\n'
      << "median = " << format_6g(stat.median) << '\n'
      << "q1 = " << format_6g(stat.q1) << '\n'
      << "q3 = " << format_6g(stat.q3) << '\n'
      << "min = " << format_6g(stat.min) << '\n'
      << "max = " << format_6g(stat.max) << '\n'
      << "grid_skipped = " << skipped << '\n';
  return out.str();
}

}  // namespace hpoly
