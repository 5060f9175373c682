#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpforce/asymptotics.hpp"
#include "cpforce/config.hpp"
#include "cpforce/records.hpp"

namespace cpforce {

// Full evaluation at one distance: numeric parts, force, regime label and the
// closed form when the label is resolved. Failures land in the row
// (status "error", message in detail) instead of throwing.
PointRecord evaluate_point(const RunConfig& cfg, double z);

// Evaluates every distance on a pool of `jobs` workers; rows keep input order.
std::vector<PointRecord> evaluate_points(const RunConfig& cfg, const std::vector<double>& zs, int jobs);

struct RegimeRow {
    double z_m = 0.0;
    double zbar = 0.0;
    RegimeLabel label;
};

std::vector<RegimeRow> regime_table(const RunConfig& cfg);
void write_regimes(std::ostream& out, const std::vector<RegimeRow>& rows, OutputFormat fmt);

// Hex SHA-256 of the text.
std::string sha256_hex(const std::string& text);

// Content-addressed store of finished output files, keyed by the hash of the
// canonical config, the command and the library version.
class ResultCache {
public:
    explicit ResultCache(std::string dir);
    // $CPFORCE_CACHE_DIR, else $XDG_CACHE_HOME/cpforce, else ~/.cache/cpforce.
    static std::string default_dir();

    static std::string key(const RunConfig& cfg, const std::string& command);
    std::optional<std::string> load(const std::string& key) const;
    // Writes to a temporary file in the cache directory, then renames it into place.
    void store(const std::string& key, const std::string& content) const;
    const std::string& dir() const { return dir_; }

private:
    std::string path_for(const std::string& key) const;
    std::string dir_;
};

const char* library_version();

}  // namespace cpforce
