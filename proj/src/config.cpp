#include "cpforce/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace cpforce {

std::vector<double> GridSpec::points() const {
    std::vector<double> out;
    if (count == 1) return {min};
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        out.push_back(log ? min * std::pow(max / min, f) : min + (max - min) * f);
    }
    // Pin the end point against rounding in pow.
    out.back() = max;
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) { throw ValidationError(key + ": " + why); }

double number(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) bad(key, "expected a finite number, got '" + v + "'");
    return x;
}

int integer(const std::string& key, const std::string& v) {
    const double x = number(key, v);
    if (x != std::floor(x) || std::abs(x) > 1e9) bad(key, "expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool boolean(const std::string& key, const std::string& v) {
    const std::string s = lower(v);
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    bad(key, "expected true or false, got '" + v + "'");
}

void check_range(const std::string& name, const std::optional<double>& lo, const std::optional<double>& hi) {
    if (!lo) bad("geometry." + name + "_min", "missing");
    if (!hi) bad("geometry." + name + "_max", "missing");
    if (!(*lo > 0.0)) bad("geometry." + name + "_min", "must be positive");
    if (!(*hi >= *lo)) bad("geometry." + name + "_max", "must be >= " + name + "_min");
}

void check_positive(const std::string& key, const std::optional<double>& v) {
    if (v && !(*v > 0.0)) bad(key, "must be positive");
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& dotted, const std::string& raw) {
    const auto dot = dotted.find('.');
    if (dot == std::string::npos) bad(dotted, "expected section.key");
    const std::string sec = dotted.substr(0, dot), key = dotted.substr(dot + 1);
    const std::string v = trim(raw);
    const std::string& k = dotted;
    if (sec == "atom") {
        if (key == "lambda0") return void(c.lambda0 = number(k, v));
        if (key == "omega0") return void(c.omega0 = number(k, v));
        if (key == "alpha") return void(c.alpha = number(k, v));
        if (key == "state") {
            const std::string s = lower(v);
            if (s == "ground") return void(c.state = State::Ground);
            if (s == "excited") return void(c.state = State::Excited);
            bad(k, "expected ground or excited, got '" + v + "'");
        }
    } else if (sec == "medium") {
        if (key == "eps") {
            if (lower(v) == "conductor") return void(c.medium = MediumSpec::conductor());
            return void(c.medium = MediumSpec::real(number(k, v)));
        }
        if (key == "type") {
            const std::string s = lower(v);
            if (s == "conductor") return void(c.medium = MediumSpec::conductor());
            if (s == "dielectric") {
                if (c.medium.is_conductor()) c.medium = MediumSpec::real(1.0);
                return;
            }
            bad(k, "expected dielectric or conductor, got '" + v + "'");
        }
    } else if (sec == "thermal") {
        if (key == "T_s") return void(c.T_s = number(k, v));
        if (key == "T_e") return void(c.T_e = number(k, v));
        if (key == "beta_s") return void(c.beta_s = number(k, v));
        if (key == "beta_e") return void(c.beta_e = number(k, v));
    } else if (sec == "geometry") {
        if (key == "z") return void(c.z = number(k, v));
        if (key == "zbar") return void(c.zbar = number(k, v));
        if (key == "z_min") return void(c.z_min = number(k, v));
        if (key == "z_max") return void(c.z_max = number(k, v));
        if (key == "zbar_min") return void(c.zbar_min = number(k, v));
        if (key == "zbar_max") return void(c.zbar_max = number(k, v));
        if (key == "count") return void(c.count = integer(k, v));
        if (key == "spacing") {
            const std::string s = lower(v);
            if (s != "log" && s != "linear") bad(k, "expected log or linear, got '" + v + "'");
            return void(c.log_spacing = s == "log");
        }
    } else if (sec == "output") {
        if (key == "format") {
            try {
                return void(c.format = output_format_from_string(lower(v)));
            } catch (const std::invalid_argument& e) {
                bad(k, e.what());
            }
        }
        if (key == "path") return void(c.out_path = v);
    } else if (sec == "engine") {
        if (key == "vac_tol") return void(c.engine.vac_tol = number(k, v));
        if (key == "thermal_tol" || key == "tol") return void(c.engine.thermal_tol = number(k, v));
        if (key == "margin") return void(c.margin = number(k, v));
        if (key == "oscillation_cutoff") return void(c.engine.oscillation_cutoff = number(k, v));
        if (key == "fd_step") return void(c.engine.fd_step = number(k, v));
        if (key == "include_g21") return void(c.engine.include_g21 = boolean(k, v));
        if (key == "thermal_reference") {
            using R = EngineOptions::ThermalReference;
            const std::string s = lower(v);
            if (s == "auto") return void(c.engine.thermal_reference = R::Auto);
            if (s == "contact") return void(c.engine.thermal_reference = R::Contact);
            if (s == "infinity") return void(c.engine.thermal_reference = R::Infinity);
            bad(k, "expected auto, contact or infinity, got '" + v + "'");
        }
    } else if (sec == "run") {
        if (key == "jobs") return void(c.jobs = integer(k, v));
        if (key == "cache") return void(c.cache = boolean(k, v));
    }
    bad(k, "unknown setting");
}

RunConfig parse_config(std::istream& in, const std::string& source) {
    RunConfig c;
    std::string line, section;
    std::set<std::string> seen;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno) + ": ";
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ValidationError(where + "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError(where + "expected key = value");
        if (section.empty()) throw ValidationError(where + "setting outside a [section]");
        const std::string key = section + "." + trim(line.substr(0, eq));
        if (!seen.insert(key).second) throw ValidationError(where + key + ": set twice");
        try {
            apply_setting(c, key, line.substr(eq + 1));
        } catch (const ValidationError& e) {
            throw ValidationError(where + e.what());
        }
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path);
    return parse_config(in, path);
}

void RunConfig::validate() const {
    if (omega0.has_value() == lambda0.has_value()) bad("atom", "give exactly one of lambda0, omega0");
    check_positive("atom.lambda0", lambda0);
    check_positive("atom.omega0", omega0);
    if (!(alpha > 0.0)) bad("atom.alpha", "must be positive");
    if (medium.is_real() && !(medium.real_eps() >= 1.0)) bad("medium.eps", "must be >= 1 or conductor");

    const bool by_T = T_s || T_e, by_beta = beta_s || beta_e;
    if (by_T == by_beta) bad("thermal", "give T_s and T_e, or beta_s and beta_e");
    if (by_T && !(T_s && T_e)) bad("thermal", "both T_s and T_e are needed");
    if (by_beta && !(beta_s && beta_e)) bad("thermal", "both beta_s and beta_e are needed");
    for (const auto& [key, v] : {std::pair{"thermal.T_s", T_s}, std::pair{"thermal.T_e", T_e}})
        if (v && !(*v >= 0.0)) bad(key, "must be >= 0");
    check_positive("thermal.beta_s", beta_s);
    check_positive("thermal.beta_e", beta_e);

    const bool metres = z_min || z_max, reduced = zbar_min || zbar_max;
    const int styles = int(z.has_value()) + int(zbar.has_value()) + int(metres) + int(reduced);
    if (styles != 1) bad("geometry", "give exactly one of z, zbar, z_min/z_max, zbar_min/zbar_max");
    check_positive("geometry.z", z);
    check_positive("geometry.zbar", zbar);
    if (metres) check_range("z", z_min, z_max);
    if (reduced) check_range("zbar", zbar_min, zbar_max);
    if (count < 1) bad("geometry.count", "must be >= 1");
    if (!is_sweep() && count != 1) bad("geometry.count", "only applies to a z range");

    if (!(engine.vac_tol > 0.0 && engine.vac_tol < 0.1)) bad("engine.vac_tol", "must lie in (0, 0.1)");
    if (!(engine.thermal_tol > 0.0 && engine.thermal_tol < 0.1)) bad("engine.thermal_tol", "must lie in (0, 0.1)");
    if (!(margin > 1.0)) bad("engine.margin", "must exceed 1");
    if (!(engine.fd_step > 0.0 && engine.fd_step < 0.2)) bad("engine.fd_step", "must lie in (0, 0.2)");
    if (!(engine.oscillation_cutoff > 0.0)) bad("engine.oscillation_cutoff", "must be positive");
    if (jobs < 1) bad("run.jobs", "must be >= 1");
}

AtomSpec RunConfig::atom() const {
    if (lambda0) return AtomSpec::from_wavelength(*lambda0, alpha, state);
    return AtomSpec{omega0.value_or(0.0), alpha, state};
}

ThermalConfig RunConfig::thermal() const {
    if (beta_s && beta_e) return {*beta_s, *beta_e};
    return ThermalConfig::from_temperatures(T_s.value_or(0.0), T_e.value_or(0.0));
}

std::vector<double> RunConfig::distances() const {
    const double l0 = atom().lambda0();
    if (z) return {*z};
    if (zbar) return {*zbar * l0};
    if (z_min) return GridSpec{*z_min, *z_max, count, log_spacing}.points();
    std::vector<double> pts = GridSpec{*zbar_min, *zbar_max, count, log_spacing}.points();
    for (double& p : pts) p *= l0;
    return pts;
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("-"); };
    os << "atom.lambda0=" << opt(lambda0) << '\n'
       << "atom.omega0=" << opt(omega0) << '\n'
       << "atom.alpha=" << format_number(alpha) << '\n'
       << "atom.state=" << to_string(state) << '\n'
       << "medium=" << medium.describe() << '\n'
       << "thermal.T_s=" << opt(T_s) << '\n'
       << "thermal.T_e=" << opt(T_e) << '\n'
       << "thermal.beta_s=" << opt(beta_s) << '\n'
       << "thermal.beta_e=" << opt(beta_e) << '\n'
       << "geometry.z=" << opt(z) << '\n'
       << "geometry.zbar=" << opt(zbar) << '\n'
       << "geometry.z_min=" << opt(z_min) << '\n'
       << "geometry.z_max=" << opt(z_max) << '\n'
       << "geometry.zbar_min=" << opt(zbar_min) << '\n'
       << "geometry.zbar_max=" << opt(zbar_max) << '\n'
       << "geometry.count=" << count << '\n'
       << "geometry.spacing=" << (log_spacing ? "log" : "linear") << '\n'
       << "output.format=" << to_string(format) << '\n'
       << "engine.vac_tol=" << format_number(engine.vac_tol) << '\n'
       << "engine.thermal_tol=" << format_number(engine.thermal_tol) << '\n'
       << "engine.thermal_reference=" << static_cast<int>(engine.thermal_reference) << '\n'
       << "engine.include_g21=" << engine.include_g21 << '\n'
       << "engine.oscillation_cutoff=" << format_number(engine.oscillation_cutoff) << '\n'
       << "engine.fd_step=" << format_number(engine.fd_step) << '\n'
       << "engine.margin=" << format_number(margin) << '\n';
    return os.str();
}

}  // namespace cpforce
