#include "cpforce/runner.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cpforce/engine.hpp"

#ifndef CPFORCE_VERSION
#define CPFORCE_VERSION "dev"
#endif

namespace cpforce {

namespace fs = std::filesystem;

const char* library_version() { return CPFORCE_VERSION; }

namespace {

std::string margins_text(const RegimeLabel& label) {
    std::string s;
    for (const auto& [name, ratio] : label.margins) s += (s.empty() ? "" : ";") + name + "=" + format_number(ratio);
    return s;
}

std::string status_of(const ShiftBreakdown& b, const ForceBreakdown& f) {
    for (const PartSI* p : {&b.vac, &b.eq, &b.neq, &f.vac, &f.eq, &f.neq})
        if (p->status == PartStatus::NotConverged) return "not-converged";
    if (b.vac.status == PartStatus::Asymptotic) return "asymptotic";
    return "ok";
}

void append(std::string& msg, const std::string& more) { msg += (msg.empty() ? "" : "; ") + more; }

}  // namespace

PointRecord evaluate_point(const RunConfig& cfg, double z) {
    PointRecord r;
    r.z_m = z;
    try {
        const AtomSpec atom = cfg.atom();
        const ThermalConfig thermal = cfg.thermal();
        const Geometry geom{z};
        r.zbar = z / atom.lambda0();
        const RegimeLabel label = classify_regime(atom, geom, thermal, cfg.medium, cfg.margin);
        r.regime = label.str();
        r.detail.margins = margins_text(label);
        r.detail.min_margin = label.min_margin();
        if (!label.reason.empty()) r.detail.message = label.reason;

        const ShiftBreakdown b = total_shift(atom, cfg.medium, geom, thermal, cfg.engine);
        const ForceBreakdown f = force(atom, cfg.medium, geom, thermal, ForceMethod::DifferentiateUnderIntegral,
                                       cfg.engine);
        r.dE_vac_J = b.vac.value;
        r.dE_eq_J = b.eq.value;
        r.dE_neq_J = b.neq.value;
        r.dE_total_J = b.total;
        r.dE_total_unit = b.total_unit();
        r.err_total_J = b.total_err;
        r.F_total_N = f.total.value;
        r.status = status_of(b, f);
        r.detail.unit_J = b.unit;
        r.detail.err_vac_J = b.vac.err;
        r.detail.err_eq_J = b.eq.err;
        r.detail.err_neq_J = b.neq.err;
        r.detail.F_vac_N = f.vac.value;
        r.detail.F_eq_N = f.eq.value;
        r.detail.F_neq_N = f.neq.value;

        if (label.resolved()) {
            try {
                const AsymptoticValue e = asymptotic_shift(atom, cfg.medium, geom, thermal, label);
                const AsymptoticValue ef = asymptotic_force(atom, cfg.medium, geom, thermal, label);
                r.asym_total_J = e.value;
                r.formula_id = e.formula_id;
                r.detail.asym_force_N = ef.value;
            } catch (const std::exception& ex) {
                append(r.detail.message, std::string("no closed form: ") + ex.what());
            }
        }
    } catch (const std::exception& ex) {
        const double nan = std::nan("");
        r.dE_vac_J = r.dE_eq_J = r.dE_neq_J = r.dE_total_J = r.dE_total_unit = nan;
        r.F_total_N = r.err_total_J = nan;
        r.asym_total_J.reset();
        r.formula_id.clear();
        r.status = "error";
        if (r.regime.empty()) r.regime = "crossover";
        append(r.detail.message, ex.what());
    }
    return r;
}

std::vector<PointRecord> evaluate_points(const RunConfig& cfg, const std::vector<double>& zs, int jobs) {
    std::vector<PointRecord> rows(zs.size());
    const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), zs.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < zs.size(); ++i) rows[i] = evaluate_point(cfg, zs[i]);
        return rows;
    }
    // Each worker claims the next index; evaluate_point never throws, and
    // every row slot is written by exactly one worker.
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < zs.size(); i = next++) rows[i] = evaluate_point(cfg, zs[i]);
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    return rows;
}

std::vector<RegimeRow> regime_table(const RunConfig& cfg) {
    std::vector<RegimeRow> rows;
    const AtomSpec atom = cfg.atom();
    const ThermalConfig thermal = cfg.thermal();
    for (double z : cfg.distances())
        rows.push_back({z, z / atom.lambda0(), classify_regime(atom, Geometry{z}, thermal, cfg.medium, cfg.margin)});
    return rows;
}

namespace {

std::string csv_quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

void write_regimes(std::ostream& out, const std::vector<RegimeRow>& rows, OutputFormat fmt) {
    if (fmt == OutputFormat::Csv) out << "z_m,zbar,regime,temperature,distance,min_margin,margins,reason\n";
    for (const RegimeRow& r : rows) {
        const RegimeLabel& l = r.label;
        if (fmt == OutputFormat::Csv) {
            out << format_number(r.z_m) << ',' << format_number(r.zbar) << ',' << l.str() << ','
                << to_string(l.temperature) << ',' << to_string(l.distance) << ',' << format_number(l.min_margin())
                << ',' << csv_quoted(margins_text(l)) << ',' << csv_quoted(l.reason) << '\n';
        } else {
            std::string margins = "{";
            for (const auto& [name, ratio] : l.margins)
                margins += (margins.size() > 1 ? "," : "") + nlohmann::json(name).dump() + ":" +
                           (std::isfinite(ratio) ? format_number(ratio) : "null");
            margins += "}";
            out << "{\"z_m\":" << format_number(r.z_m) << ",\"zbar\":" << format_number(r.zbar)
                << ",\"regime\":" << nlohmann::json(l.str()).dump() << ",\"temperature\":\""
                << to_string(l.temperature) << "\",\"distance\":\"" << to_string(l.distance) << "\",\"min_margin\":"
                << (std::isfinite(l.min_margin()) ? format_number(l.min_margin()) : "null")
                << ",\"margins\":" << margins << ",\"reason\":" << nlohmann::json(l.reason).dump() << "}\n";
        }
    }
}

std::string sha256_hex(const std::string& text) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {}

std::string ResultCache::default_dir() {
    if (const char* d = std::getenv("CPFORCE_CACHE_DIR"); d && *d) return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/cpforce";
    if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/cpforce";
    return ".cpforce-cache";
}

std::string ResultCache::key(const RunConfig& cfg, const std::string& command) {
    return sha256_hex("command=" + command + "\n" + cfg.canonical() + "version=" + library_version() + "\n");
}

std::string ResultCache::path_for(const std::string& key) const { return dir_ + "/" + key + ".out"; }

std::optional<std::string> ResultCache::load(const std::string& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ResultCache::store(const std::string& key, const std::string& content) const {
    fs::create_directories(dir_);
    static std::atomic<unsigned> counter{0};
    const std::string tmp =
        dir_ + "/." + key + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("short write to cache file " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path_for(key), ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot publish cache entry: " + ec.message());
    }
}

}  // namespace cpforce
