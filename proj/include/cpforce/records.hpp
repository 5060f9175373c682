#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cpforce {

// 17 significant digits, so every double survives a text round trip.
// Non-finite values print as nan, inf, -inf.
std::string format_number(double v);
// Accepts everything format_number writes; throws std::invalid_argument.
double parse_number(const std::string& s);

enum class OutputFormat { Csv, Jsonl };
const char* to_string(OutputFormat f);
OutputFormat output_format_from_string(const std::string& s);

// Per-point numbers that only the JSONL form carries.
struct PointDetail {
    double unit_J = 0.0;  // one shift unit
    double err_vac_J = 0.0, err_eq_J = 0.0, err_neq_J = 0.0;
    double F_vac_N = 0.0, F_eq_N = 0.0, F_neq_N = 0.0;
    std::optional<double> asym_force_N;
    double min_margin = 0.0;
    std::string margins;  // "name=ratio;..." in classifier order
    std::string message;  // warning or error text

    bool operator==(const PointDetail&) const = default;
};

// One evaluated distance. CSV carries the fixed columns, JSONL adds detail.
struct PointRecord {
    double z_m = 0.0;
    double zbar = 0.0;
    std::string regime;
    double dE_vac_J = 0.0, dE_eq_J = 0.0, dE_neq_J = 0.0, dE_total_J = 0.0;
    double dE_total_unit = 0.0;
    double F_total_N = 0.0;
    double err_total_J = 0.0;
    std::optional<double> asym_total_J;
    std::string formula_id;  // empty when no closed form applies
    std::string status;      // ok, not-converged, asymptotic, error
    PointDetail detail;

    bool same_columns(const PointRecord& o) const;
    bool operator==(const PointRecord&) const = default;
};

const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string to_csv(const PointRecord& r);
PointRecord record_from_csv(const std::string& line);

std::string to_jsonl(const PointRecord& r);
PointRecord record_from_jsonl(const std::string& line);

void write_records(std::ostream& out, const std::vector<PointRecord>& rows, OutputFormat fmt);
// Reads what write_records produced; the CSV header line is required.
std::vector<PointRecord> read_records(std::istream& in, OutputFormat fmt);

}  // namespace cpforce
