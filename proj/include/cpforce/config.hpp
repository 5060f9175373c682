#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpforce/core.hpp"
#include "cpforce/engine.hpp"
#include "cpforce/records.hpp"

namespace cpforce {

struct GridSpec {
    double min = 0.0, max = 0.0;
    int count = 1;
    bool log = true;

    std::vector<double> points() const;
};

// Everything a run needs. Distances are stored in metres; the zbar keys of the
// file are converted once lambda0 is known.
struct RunConfig {
    std::optional<double> omega0, lambda0;
    double alpha = 0.0;
    State state = State::Ground;

    MediumSpec medium = MediumSpec::real(1.0);

    std::optional<double> T_s, T_e;        // K
    std::optional<double> beta_s, beta_e;  // m

    std::optional<double> z, zbar;  // single point
    std::optional<double> z_min, z_max, zbar_min, zbar_max;
    int count = 1;
    bool log_spacing = true;

    OutputFormat format = OutputFormat::Csv;
    std::string out_path;  // empty: stdout

    EngineOptions engine;
    double margin = 10.0;
    int jobs = 1;
    bool cache = true;

    // Throws ValidationError naming the offending key.
    void validate() const;
    AtomSpec atom() const;
    ThermalConfig thermal() const;
    // Distances in metres, grid order. A single z gives one entry.
    std::vector<double> distances() const;
    bool is_sweep() const { return z_min || z_max || zbar_min || zbar_max; }

    // Every setting that changes the numbers, one key = value per line in a
    // fixed order. Output path and worker count are left out.
    std::string canonical() const;
};

// key = value lines under [section] headers; '#' starts a comment.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

// Sets "section.key" to value with the same rules as the file grammar.
void apply_setting(RunConfig& cfg, const std::string& dotted_key, const std::string& value);

}  // namespace cpforce
