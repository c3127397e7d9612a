#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hpoly/ksz.hpp"
#include "hpoly/scaling.hpp"

namespace hpoly {

inline constexpr std::string_view kRecordHeader =
    "m,n,r,seed,source,coeff_norm_r,sup_lower,sup_upper,ratio,ratio_conservative";

/// CSV with kRecordHeader; reals carry 17 significant digits so rows
/// re-parse to identical doubles.
std::string format_records(const std::vector<ExperimentRecord>& records);

/// Inverse of format_records. The grid_skipped flag is not stored and
/// parses as false. Throws ParseError naming the offending line.
std::vector<ExperimentRecord> parse_records(std::string_view csv);

/// Flat "key = value" block, 6 significant digits.
std::string format_fit_summary(const ScalingFit& fit);

inline constexpr std::string_view kKszHeader = "sample,seed,sup_lower,sup_upper,gap,vertex_max,coeff_norm_1,grid_skipped";

std::string format_ksz_rows(const ksz::SupNormStatistic& stat);
std::string format_ksz_summary(int m, int n, ScalarField field, const ksz::SupNormStatistic& stat);

}  // namespace hpoly
