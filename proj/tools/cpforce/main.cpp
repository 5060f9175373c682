// cpforce: atom-surface energy shifts and forces from the command line.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpforce/config.hpp"
#include "cpforce/records.hpp"
#include "cpforce/runner.hpp"
#include "cpforce/validation.hpp"

namespace {

using namespace cpforce;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string format;
    int jobs = 0;
    double tol = 0.0;
    double margin = 0.0;
    std::vector<std::string> sets;
    bool no_cache = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "config file (key = value lines in [sections])");
    cmd->add_option("--out", f.out_path, "output file (default: stdout)");
    cmd->add_option("--format", f.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", f.tol, "relative tolerance of the thermal integrals")->check(CLI::PositiveNumber);
    cmd->add_option("--margin", f.margin, "ratio that counts as much smaller in the regime labels");
    cmd->add_option("--set", f.sets, "override one setting, e.g. --set medium.eps=4 (repeatable)");
    cmd->add_flag("--no-cache", f.no_cache, "always recompute");
}

RunConfig build_config(const CommonFlags& f) {
    RunConfig cfg = f.config_path.empty() ? RunConfig{} : load_config(f.config_path);
    for (const std::string& s : f.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ValidationError("--set " + s + ": expected section.key=value");
        apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!f.out_path.empty()) cfg.out_path = f.out_path;
    if (!f.format.empty()) cfg.format = output_format_from_string(f.format);
    if (f.jobs > 0) cfg.jobs = f.jobs;
    if (f.tol > 0.0) cfg.engine.thermal_tol = f.tol;
    if (f.margin != 0.0) cfg.margin = f.margin;
    if (f.no_cache) cfg.cache = false;
    cfg.validate();
    return cfg;
}

// Replaces the target in one step so readers never see a partial file.
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << text;
        if (!out.flush()) throw std::runtime_error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void report_messages(const std::vector<PointRecord>& rows) {
    std::set<std::string> seen;
    for (const PointRecord& r : rows) {
        if (r.detail.message.empty()) continue;
        const std::string key = r.status + ": " + r.detail.message;
        if (seen.insert(key).second)
            std::cerr << (r.status == "error" ? "error" : "warning") << " at z=" << format_number(r.z_m) << " m: "
                      << r.detail.message << '\n';
    }
}

int run_points(const RunConfig& cfg, const std::string& command) {
    std::optional<ResultCache> cache;
    std::string key;
    if (cfg.cache) {
        cache.emplace(ResultCache::default_dir());
        key = ResultCache::key(cfg, command);
        if (auto hit = cache->load(key)) {
            emit(cfg.out_path, *hit);
            return 0;
        }
    }
    const std::vector<PointRecord> rows = evaluate_points(cfg, cfg.distances(), cfg.jobs);
    report_messages(rows);
    std::ostringstream os;
    write_records(os, rows, cfg.format);
    const bool any_error = std::any_of(rows.begin(), rows.end(), [](const PointRecord& r) { return r.status == "error"; });
    // Rows with errors are not worth keeping: a rerun may succeed.
    if (cache && !any_error) {
        try {
            cache->store(key, os.str());
        } catch (const std::exception& e) {
            std::cerr << "warning: " << e.what() << '\n';
        }
    }
    emit(cfg.out_path, os.str());
    return 0;
}

int cmd_shift(const CommonFlags& f) {
    const RunConfig cfg = build_config(f);
    if (cfg.is_sweep()) throw ValidationError("geometry: shift takes a single z or zbar; use sweep for a range");
    return run_points(cfg, "shift");
}

int cmd_sweep(const CommonFlags& f) { return run_points(build_config(f), "sweep"); }

int cmd_regimes(const CommonFlags& f) {
    const RunConfig cfg = build_config(f);
    std::ostringstream os;
    write_regimes(os, regime_table(cfg), cfg.format);
    emit(cfg.out_path, os.str());
    return 0;
}

struct ValidateFlags {
    std::vector<std::string> checks;
    double budget = std::numeric_limits<double>::infinity();
    std::string out_path;
    bool list = false;
};

int cmd_validate(const ValidateFlags& f) {
    if (f.list) {
        for (const CheckInfo& c : check_catalog())
            std::cout << c.id << "  " << c.summary << (c.criterion ? "" : " (supplementary)") << '\n';
        return 0;
    }
    const std::vector<std::string> selection = f.checks.empty() ? all_check_ids() : f.checks;
    for (const std::string& id : selection)
        if (!is_known_check(id)) throw ValidationError("unknown check id: " + id + " (see validate --list)");
    const std::vector<CheckResult> results = run_suite(selection, f.budget);
    std::ostringstream os;
    int pass = 0, fail = 0, open = 0;
    for (const CheckResult& r : results) {
        os << to_jsonl(r) << '\n';
        (r.status == CheckStatus::Pass ? pass : r.status == CheckStatus::Fail ? fail : open)++;
        std::cerr << to_string(r.status) << "  " << r.check_id << "  " << r.detail << '\n';
    }
    std::cerr << pass << " pass, " << fail << " fail, " << open << " inconclusive\n";
    emit(f.out_path, os.str());
    return any_failed(results) ? kExitFail : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Atom-surface energy shifts and Casimir-Polder forces in and out of thermal equilibrium"};
    app.set_version_flag("--version", std::string(library_version()));
    app.require_subcommand(1);

    CommonFlags shift_f, sweep_f, regimes_f;
    ValidateFlags val_f;
    CLI::App* shift = app.add_subcommand("shift", "evaluate one distance");
    add_common(shift, shift_f);
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a z grid");
    add_common(sweep, sweep_f);
    CLI::App* regimes = app.add_subcommand("regimes", "classify each distance into an asymptotic regime");
    add_common(regimes, regimes_f);
    CLI::App* validate = app.add_subcommand("validate", "run the acceptance checks");
    validate->add_option("--check", val_f.checks, "check id to run (repeatable; default: all)");
    validate->add_option("--budget", val_f.budget, "seconds; checks not started in time are Inconclusive");
    validate->add_option("--out", val_f.out_path, "JSONL report file (default: stdout)");
    validate->add_flag("--list", val_f.list, "list check ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*shift) return cmd_shift(shift_f);
        if (*sweep) return cmd_sweep(sweep_f);
        if (*regimes) return cmd_regimes(regimes_f);
        return cmd_validate(val_f);
    } catch (const ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
}
