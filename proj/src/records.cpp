#include "cpforce/records.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace cpforce {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_number(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "jsonl"; }

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "jsonl") return OutputFormat::Jsonl;
    throw std::invalid_argument("format must be csv or jsonl, got '" + s + "'");
}

bool PointRecord::same_columns(const PointRecord& o) const {
    auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
    auto same_opt = [&](const std::optional<double>& a, const std::optional<double>& b) {
        return a.has_value() == b.has_value() && (!a || same(*a, *b));
    };
    return same(z_m, o.z_m) && same(zbar, o.zbar) && regime == o.regime && same(dE_vac_J, o.dE_vac_J) &&
           same(dE_eq_J, o.dE_eq_J) && same(dE_neq_J, o.dE_neq_J) && same(dE_total_J, o.dE_total_J) &&
           same(dE_total_unit, o.dE_total_unit) && same(F_total_N, o.F_total_N) &&
           same(err_total_J, o.err_total_J) && same_opt(asym_total_J, o.asym_total_J) &&
           formula_id == o.formula_id && status == o.status;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{"z_m",        "zbar",          "regime",     "dE_vac_J",    "dE_eq_J",
                                               "dE_neq_J",   "dE_total_J",    "dE_total_unit", "F_total_N", "err_total_J",
                                               "asym_total_J", "formula_id", "status"};
    return cols;
}

std::string csv_header() {
    std::string h;
    for (const std::string& c : csv_columns()) h += (h.empty() ? "" : ",") + c;
    return h;
}

namespace {

// Free-text fields never contain separators; reject rather than quote.
const std::string& csv_safe(const std::string& s) {
    if (s.find_first_of(",\"\n\r") != std::string::npos)
        throw std::invalid_argument("CSV field contains a separator: '" + s + "'");
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string opt_text(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }
std::optional<double> opt_parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_number(s);
}

// Non-finite numbers travel as strings.
double jget(const nlohmann::json& j) {
    if (j.is_string()) return parse_number(j.get<std::string>());
    return j.get<double>();
}

}  // namespace

std::string to_csv(const PointRecord& r) {
    std::string s = format_number(r.z_m);
    auto add = [&](const std::string& v) { s += "," + v; };
    add(format_number(r.zbar));
    add(csv_safe(r.regime));
    add(format_number(r.dE_vac_J));
    add(format_number(r.dE_eq_J));
    add(format_number(r.dE_neq_J));
    add(format_number(r.dE_total_J));
    add(format_number(r.dE_total_unit));
    add(format_number(r.F_total_N));
    add(format_number(r.err_total_J));
    add(opt_text(r.asym_total_J));
    add(csv_safe(r.formula_id));
    add(csv_safe(r.status));
    return s;
}

PointRecord record_from_csv(const std::string& line) {
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != csv_columns().size())
        throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields, expected " +
                                    std::to_string(csv_columns().size()));
    PointRecord r;
    r.z_m = parse_number(f[0]);
    r.zbar = parse_number(f[1]);
    r.regime = f[2];
    r.dE_vac_J = parse_number(f[3]);
    r.dE_eq_J = parse_number(f[4]);
    r.dE_neq_J = parse_number(f[5]);
    r.dE_total_J = parse_number(f[6]);
    r.dE_total_unit = parse_number(f[7]);
    r.F_total_N = parse_number(f[8]);
    r.err_total_J = parse_number(f[9]);
    r.asym_total_J = opt_parse(f[10]);
    r.formula_id = f[11];
    r.status = f[12];
    return r;
}

namespace {

// Minimal JSON object writer; numbers keep 17 significant digits.
class ObjectWriter {
public:
    ObjectWriter& num(const char* key, double v) {
        return raw(key, std::isfinite(v) ? format_number(v) : quoted(format_number(v)));
    }
    ObjectWriter& opt(const char* key, const std::optional<double>& v) { return v ? num(key, *v) : raw(key, "null"); }
    ObjectWriter& str(const char* key, const std::string& v) { return raw(key, quoted(v)); }
    ObjectWriter& opt_str(const char* key, const std::string& v) { return v.empty() ? raw(key, "null") : str(key, v); }
    ObjectWriter& raw(const char* key, const std::string& v) {
        text_ += (text_.empty() ? "{" : ",") + quoted(key) + ":" + v;
        return *this;
    }
    std::string done() const { return text_.empty() ? "{}" : text_ + "}"; }

private:
    static std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }
    std::string text_;
};

}  // namespace

std::string to_jsonl(const PointRecord& r) {
    const PointDetail& d = r.detail;
    ObjectWriter dw;
    dw.num("unit_J", d.unit_J)
        .num("err_vac_J", d.err_vac_J)
        .num("err_eq_J", d.err_eq_J)
        .num("err_neq_J", d.err_neq_J)
        .num("F_vac_N", d.F_vac_N)
        .num("F_eq_N", d.F_eq_N)
        .num("F_neq_N", d.F_neq_N)
        .opt("asym_force_N", d.asym_force_N)
        .num("min_margin", d.min_margin)
        .str("margins", d.margins)
        .str("message", d.message);
    ObjectWriter w;
    w.num("z_m", r.z_m)
        .num("zbar", r.zbar)
        .str("regime", r.regime)
        .num("dE_vac_J", r.dE_vac_J)
        .num("dE_eq_J", r.dE_eq_J)
        .num("dE_neq_J", r.dE_neq_J)
        .num("dE_total_J", r.dE_total_J)
        .num("dE_total_unit", r.dE_total_unit)
        .num("F_total_N", r.F_total_N)
        .num("err_total_J", r.err_total_J)
        .opt("asym_total_J", r.asym_total_J)
        .opt_str("formula_id", r.formula_id)
        .str("status", r.status)
        .raw("detail", dw.done());
    return w.done();
}

PointRecord record_from_jsonl(const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line);
    PointRecord r;
    r.z_m = jget(j.at("z_m"));
    r.zbar = jget(j.at("zbar"));
    r.regime = j.at("regime").get<std::string>();
    r.dE_vac_J = jget(j.at("dE_vac_J"));
    r.dE_eq_J = jget(j.at("dE_eq_J"));
    r.dE_neq_J = jget(j.at("dE_neq_J"));
    r.dE_total_J = jget(j.at("dE_total_J"));
    r.dE_total_unit = jget(j.at("dE_total_unit"));
    r.F_total_N = jget(j.at("F_total_N"));
    r.err_total_J = jget(j.at("err_total_J"));
    if (!j.at("asym_total_J").is_null()) r.asym_total_J = jget(j.at("asym_total_J"));
    if (!j.at("formula_id").is_null()) r.formula_id = j.at("formula_id").get<std::string>();
    r.status = j.at("status").get<std::string>();
    if (j.contains("detail")) {
        const nlohmann::json& dj = j.at("detail");
        PointDetail& d = r.detail;
        d.unit_J = jget(dj.at("unit_J"));
        d.err_vac_J = jget(dj.at("err_vac_J"));
        d.err_eq_J = jget(dj.at("err_eq_J"));
        d.err_neq_J = jget(dj.at("err_neq_J"));
        d.F_vac_N = jget(dj.at("F_vac_N"));
        d.F_eq_N = jget(dj.at("F_eq_N"));
        d.F_neq_N = jget(dj.at("F_neq_N"));
        if (!dj.at("asym_force_N").is_null()) d.asym_force_N = jget(dj.at("asym_force_N"));
        d.min_margin = jget(dj.at("min_margin"));
        d.margins = dj.at("margins").get<std::string>();
        d.message = dj.at("message").get<std::string>();
    }
    return r;
}

void write_records(std::ostream& out, const std::vector<PointRecord>& rows, OutputFormat fmt) {
    if (fmt == OutputFormat::Csv) {
        out << csv_header() << '\n';
        for (const PointRecord& r : rows) out << to_csv(r) << '\n';
    } else {
        for (const PointRecord& r : rows) out << to_jsonl(r) << '\n';
    }
}

std::vector<PointRecord> read_records(std::istream& in, OutputFormat fmt) {
    std::vector<PointRecord> rows;
    std::string line;
    if (fmt == OutputFormat::Csv) {
        if (!std::getline(in, line)) throw std::invalid_argument("missing CSV header");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line != csv_header()) throw std::invalid_argument("unexpected CSV header: " + line);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(fmt == OutputFormat::Csv ? record_from_csv(line) : record_from_jsonl(line));
    }
    return rows;
}

}  // namespace cpforce
