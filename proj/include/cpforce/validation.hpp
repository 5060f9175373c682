#pragma once

#include <string>
#include <vector>

namespace cpforce {

enum class CheckStatus { Pass, Fail, Inconclusive };
const char* to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);

struct CheckResult {
    std::string check_id;
    CheckStatus status = CheckStatus::Inconclusive;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    double floor = 1e-300;  // lower bound on the scale of |expected|
    double runtime = 0.0;   // s
    std::string detail;
};

// |measured - expected| <= tolerance * max(|expected|, floor)
bool within_tolerance(const CheckResult& r);

struct CheckInfo {
    std::string id;
    int criterion = 0;  // acceptance criterion number, 0 for supplementary checks
    double time_limit = 0.0;  // s; exceeding it fails the check
    std::string summary;
};

// Every registered check, acceptance criteria first in criterion order.
const std::vector<CheckInfo>& check_catalog();
bool is_known_check(const std::string& id);
std::vector<std::string> all_check_ids();
std::vector<std::string> acceptance_check_ids();

// Frozen oracle values. Looked up in $CPFORCE_REFERENCE, then the copy in the
// source tree.
std::string reference_file_path();

CheckResult run_check(const std::string& id);

// Runs the selection in order. Once the elapsed time reaches budget seconds the
// remaining checks are reported Inconclusive. Throws std::invalid_argument for
// an empty selection or an unknown id.
std::vector<CheckResult> run_suite(const std::vector<std::string>& selection, double budget);

std::string to_jsonl(const CheckResult& r);
CheckResult check_result_from_jsonl(const std::string& line);
bool any_failed(const std::vector<CheckResult>& results);

}  // namespace cpforce
