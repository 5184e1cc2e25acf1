// table.hpp - report rows and deterministic table emission (text/csv/json).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "echkit/errors.hpp"

namespace echkit::report {

enum class Format { text, csv, json };
enum class RowStatus { match, mismatch, no_reference };

// Tolerance for calling a recomputed value a match against a stored
// reference printed with six significant digits.
inline constexpr double kMatchTol = 1e-4;

struct ReportRow {
    long long k = 0;
    double value = 0.0;
    std::optional<double> reference;
    RowStatus status = RowStatus::no_reference;
    std::string label;
};

ReportRow make_row(long long k, double value,
                   std::optional<double> reference = std::nullopt,
                   std::string label = {});

const char* status_name(RowStatus s);

Format parse_format(const std::string& name);

// Deterministic, byte-stable rendering for fixed inputs. precision controls
// the fractional digits of text output; csv and json print full precision.
std::string emit_table(const std::vector<ReportRow>& rows, Format format, int precision);

// Full-precision double formatting used by the csv path (round-trip exact).
std::string format_full(double v);

std::string format_fixed(double v, int precision);

} // namespace echkit::report
