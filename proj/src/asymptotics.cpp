#include "cpforce/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace cpforce {

const char* to_string(TempRegime r) {
    switch (r) {
        case TempRegime::LowT: return "lowT";
        case TempRegime::HighT: return "highT";
        default: return "crossover";
    }
}

const char* to_string(DistRegime r) {
    switch (r) {
        case DistRegime::Short: return "short";
        case DistRegime::Intermediate: return "intermediate";
        case DistRegime::Long: return "long";
        default: return "crossover";
    }
}

namespace {

// The three terms are each O(eps^2) and cancel to O(1), so the sum is done
// with 50 digits; double loses everything beyond eps ~ 1e6.
using Wide = boost::multiprecision::cpp_bin_float_50;

Wide coeff_g_wide(const Wide& eps) {
    using boost::multiprecision::log;
    using boost::multiprecision::sqrt;
    const Wide se = sqrt(eps);
    const Wide em1 = eps - 1;
    const Wide sm = sqrt(em1);
    const Wide sp = sqrt(eps + 1);
    const Wide e2 = eps * eps;
    const Wide a = (-6 * e2 + 3 * eps * se + 4 * eps + 3 * se - 10) / em1;
    const Wide b = 3 * (2 * e2 * eps - 4 * e2 + 3 * eps + 1) / (em1 * sm) * log(se + sm);
    const Wide c = 6 * e2 / sp * log((1 + sp) / (eps + se * sp));
    return a + b + c;
}

}  // namespace

double coeff_g(double eps) {
    if (!(eps > 1.0) || !std::isfinite(eps)) throw DomainError("coeff_g: eps must be finite and > 1");
    return static_cast<double>(coeff_g_wide(Wide(eps)));
}

double coeff_g(const MediumSpec& medium) {
    if (medium.is_conductor()) return kConductorG;
    return coeff_g(medium.real_eps());
}

Coefficient coeff_f(int k, double eps, double tol) {
    if (k < 1 || k > 7) throw std::invalid_argument("coeff_f: k must be in 1..7");
    if (!(eps >= 1.0) || !std::isfinite(eps)) throw DomainError("coeff_f: eps must be finite and >= 1");
    if (k == 7 && eps == 1.0) throw DomainError("coeff_f: f7 diverges at eps = 1");
    const double em1 = eps - 1.0;
    const double ep1 = eps + 1.0;
    switch (k) {
        case 1: return {M_PI * em1 * (((3.0 * eps + 11.0) * eps + 1.0) * eps + 1.0) / (16.0 * ep1 * ep1 * ep1), 0.0};
        case 4: return {(3.0 * eps + 1.0) * em1 / (ep1 * ep1), 0.0};
        case 5: return {((5.0 * eps + 2.0) * eps + 1.0) / (ep1 * ep1), 0.0};
        case 6: return {(std::sqrt(eps) - 1.0) / (std::sqrt(eps) + 1.0), 0.0};
        case 7: return {(((eps - 1.0) * eps + 3.0) * eps + 1.0) / (eps * eps - 1.0), 0.0};
        default: break;
    }
    if (em1 == 0.0) return {0.0, 0.0};
    quad::Options o;
    o.rel_tol = tol;
    o.abs_tol = tol * 1e-3;
    quad::QuadResult r;
    if (k == 2) {
        quad::Integrand h = [&](double t) {
            const double t2 = t * t;
            const double root = std::sqrt(em1 + t2);
            const double a = t + root;
            const double b = eps * t + root;
            return t2 * (-em1 / (a * a) + (1.0 - 2.0 * t2) * ((eps * eps - 1.0) * t2 - em1) / (b * b));
        };
        r = integrate_unit(h, o);
        return {r.value, r.abs_err};
    }
    quad::Integrand h = [&](double t) {
        const double t2 = t * t;
        return t2 * t * std::sqrt((1.0 - t) * (1.0 + t)) * ((3.0 * eps * eps - 2.0 * eps - 1.0) * t2 + ep1) /
               ((eps * eps - 1.0) * t2 + 1.0);
    };
    r = integrate_unit(h, o);
    const double pre = 2.0 * em1 * std::sqrt(em1);
    return {pre * r.value, pre * r.abs_err};
}

std::string RegimeLabel::str() const {
    if (!resolved()) return "crossover";
    return std::string(to_string(temperature)) + "." + to_string(distance);
}

double RegimeLabel::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& kv : margins) m = std::min(m, kv.second);
    return m;
}

namespace {

struct Condition {
    std::string name;
    double ratio;
};

// Distance candidates in order; the first whose conditions all hold wins.
struct Candidate {
    DistRegime regime;
    std::vector<Condition> conds;
};

double worst(const std::vector<Condition>& c) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& x : c) m = std::min(m, x.ratio);
    return m;
}

}  // namespace

RegimeLabel classify_regime(const DimensionlessParams& p, double margin) {
    if (!(margin > 1.0)) throw ValidationError("margin factor must exceed 1");
    RegimeLabel label;
    label.margin_factor = margin;
    if (!(p.zbar > 0.0) || !(p.bs > 0.0) || !(p.be > 0.0))
        throw ValidationError("classify_regime: zbar, bs, be must be positive");
    if (!p.conductor && !(p.eps > 1.0)) {
        label.reason = "eps = 1: no interface";
        return label;
    }
    // The conductor blocks are stated in z and beta_e alone.
    double xmin, xmax, bmin, bmax;
    std::string xs, bs;
    if (p.conductor) {
        xmin = xmax = p.zbar;
        bmin = bmax = p.be;
        xs = "z";
        bs = "beta_e";
    } else {
        const double x1 = 2.0 * p.zbar;
        const double x2 = x1 * std::sqrt(p.eps - 1.0);
        xmin = std::min(x1, x2);
        xmax = std::max(x1, x2);
        bmin = std::min(p.bs, p.be);
        bmax = std::max(p.bs, p.be);
        xs = "{2z,2z*sqrt(eps-1)}";
        bs = "{beta_s,beta_e}";
    }
    std::vector<Candidate> cands;
    if (bmin >= margin) {
        label.temperature = TempRegime::LowT;
        label.margins.push_back({"lambda0 << " + bs, bmin});
        cands.push_back({DistRegime::Short, {{xs + " << lambda0", 1.0 / xmax}}});
        cands.push_back(
            {DistRegime::Intermediate, {{"lambda0 << " + xs, xmin}, {xs + " << " + bs, bmin / xmax}}});
        cands.push_back({DistRegime::Long, {{bs + " << " + xs, xmin / bmax}}});
    } else if (bmax * margin <= 1.0) {
        label.temperature = TempRegime::HighT;
        label.margins.push_back({bs + " << lambda0", 1.0 / bmax});
        cands.push_back({DistRegime::Short, {{xs + " << " + bs, bmin / xmax}}});
        cands.push_back(
            {DistRegime::Intermediate, {{bs + " << " + xs, xmin / bmax}, {xs + " << lambda0", 1.0 / xmax}}});
        cands.push_back({DistRegime::Long, {{"lambda0 << " + xs, xmin}}});
    } else {
        label.margins.push_back({"lambda0 << " + bs, bmin});
        label.margins.push_back({bs + " << lambda0", 1.0 / bmax});
        label.reason = "thermal wavelength and transition wavelength are not separated";
        return label;
    }
    const Candidate* best = nullptr;
    for (const auto& c : cands) {
        if (worst(c.conds) >= margin) {
            best = &c;
            break;
        }
        if (!best || worst(c.conds) > worst(best->conds)) best = &c;
    }
    for (const auto& c : best->conds) label.margins.push_back({c.name, c.ratio});
    if (worst(best->conds) < margin) {
        label.reason = "distance scales are not separated";
        return label;
    }
    label.distance = best->regime;
    // f5 and f7 are not trustworthy as eps -> 1.
    if (!p.conductor && label.temperature == TempRegime::HighT && label.distance != DistRegime::Short &&
        p.eps < 1.2) {
        label.margins.push_back({"eps >= 1.2", p.eps / 1.2});
        label.distance = DistRegime::Crossover;
        label.reason = "eps < 1.2: high-temperature blocks with f5/f7 are not valid";
    }
    return label;
}

RegimeLabel classify_regime(const AtomSpec& atom, const Geometry& geom, const ThermalConfig& thermal,
                            const MediumSpec& medium, double margin) {
    return classify_regime(nondimensionalize(atom, medium, thermal, geom), margin);
}

Series& Series::add(double coef, double power, Osc osc) {
    if (coef != 0.0) terms.push_back({coef, power, osc});
    return *this;
}

Series& Series::add(const Series& other, double factor) {
    for (const auto& t : other.terms) add(factor * t.coef, t.power, t.osc);
    return *this;
}

double Series::value(double z) const {
    double v = 0.0;
    for (const auto& t : terms) {
        double w = t.coef * std::pow(z, t.power);
        if (t.osc == Osc::Cos) w *= std::cos(2.0 * z);
        if (t.osc == Osc::Sin) w *= std::sin(2.0 * z);
        v += w;
    }
    return v;
}

double Series::slope(double z) const {
    double v = 0.0;
    for (const auto& t : terms) {
        const double zp = std::pow(z, t.power);
        const double dzp = t.power == 0.0 ? 0.0 : t.power * std::pow(z, t.power - 1.0);
        switch (t.osc) {
            case Osc::None: v += t.coef * dzp; break;
            case Osc::Cos: v += t.coef * (dzp * std::cos(2.0 * z) - 2.0 * zp * std::sin(2.0 * z)); break;
            case Osc::Sin: v += t.coef * (dzp * std::sin(2.0 * z) + 2.0 * zp * std::cos(2.0 * z)); break;
        }
    }
    return v;
}

Series vac_long_series(const KernelSet& k, int sign) {
    using O = Series::Osc;
    double S[4] = {0, 0, 0, 0};
    for (Polarization s : kPolarizations) {
        const KernelEndpointData e = k.endpoints(s);
        const double w = weight(s);
        S[0] += w * e.T1;
        S[1] += w * e.dT1;
        S[2] += w * e.d2T1;
        S[3] += w * e.d3T1;
    }
    const double g = k.conductor ? kConductorG : coeff_g(k.eps);
    Series out;
    out.add(-sign * g / (16.0 * M_PI), -4.0);
    if (sign > 0) {
        out.add(-S[0] / 2.0, -1.0, O::Cos);
        out.add(S[1] / 4.0, -2.0, O::Sin);
        out.add(S[2] / 8.0, -3.0, O::Cos);
        out.add(-S[3] / 16.0, -4.0, O::Sin);
    }
    return out;
}

ReducedExpansion asymptotic_expansion(const DimensionlessParams& p, int sign, const RegimeLabel& regime) {
    using O = Series::Osc;
    if (!regime.resolved())
        throw RegimeRefused("no closed form outside a resolved regime: " +
                            (regime.reason.empty() ? std::string("crossover") : regime.reason));
    if (sign != 1 && sign != -1) throw std::invalid_argument("state sign must be +1 or -1");
    const bool low = regime.temperature == TempRegime::LowT;
    const DistRegime d = regime.distance;
    const double th = sign < 0 ? 1.0 : -1.0;  // thermal parts flip with the state
    const bool excited = sign > 0;
    ReducedExpansion r;
    r.formula_id = p.conductor ? std::string("conductor.") + to_string(regime.temperature) + "." +
                                     to_string(d) + (excited ? ".excited" : ".ground")
                               : std::string(to_string(regime.temperature)) + "." + to_string(d) +
                                     (excited ? ".excited" : ".ground") + ".dielectric";
    const double ibs = 1.0 / p.bs, ibe = 1.0 / p.be;

    if (p.conductor) {
        Series vac_far;
        vac_far.add(-sign * kConductorG / (16.0 * M_PI), -4.0);
        if (excited) vac_far.add(0.5, -1.0, O::Cos).add(-0.25, -3.0, O::Cos).add(-0.5, -2.0, O::Sin);
        const bool near = low ? d == DistRegime::Short : d != DistRegime::Long;
        if (near)
            r.vac.add(-0.125, -3.0);
        else
            r.vac = vac_far;
        if (low) {
            if (d == DistRegime::Long)
                r.eq.add(-th * 0.25 * ibe, -3.0);
            else
                r.eq.add(-th * 32.0 * std::pow(M_PI, 5) / 315.0 * std::pow(ibe, 6), 2.0);
        } else {
            switch (d) {
                case DistRegime::Short: r.eq.add(th * 4.0 * std::pow(M_PI, 3) / 75.0 * std::pow(ibe, 4), 2.0); break;
                case DistRegime::Intermediate: r.eq.add(th * 0.5 * ibe, 1.0); break;
                default:
                    r.eq.add(-th * 0.5 * ibe, -1.0, O::Cos).add(th * 0.5 * ibe, -2.0, O::Sin).add(-th * 0.25 * ibe, -3.0);
            }
        }
        return r;
    }

    const double eps = p.eps;
    const double ratio = (eps - 1.0) / (eps + 1.0);
    const double g = coeff_g(eps);
    const double se = std::sqrt(eps);
    Series vac_far;
    vac_far.add(-sign * g / (16.0 * M_PI), -4.0);
    if (excited) {
        const double s0 = (1.0 - se) / (1.0 + se);
        vac_far.add(-s0 / 2.0, -1.0, O::Cos).add(s0 / 2.0, -2.0, O::Sin);
    }
    Series vac_near;
    vac_near.add(-ratio / 8.0, -3.0);

    if (low) {
        r.vac = d == DistRegime::Short ? vac_near : vac_far;
        if (d == DistRegime::Long) {
            r.eq.add(-th * ratio / 4.0 * ibe, -3.0);
            r.neq.add(-th * M_PI / 12.0 * (eps + 1.0) / std::sqrt(eps - 1.0) * (ibs * ibs - ibe * ibe), -2.0);
        } else {
            const double f1 = coeff_f(1, eps).value;
            const double f2 = coeff_f(2, eps).value;
            const double c5 = 96.0 * kZeta5 / M_PI * f1;
            r.eq.add(th * c5 * std::pow(ibe, 5), 1.0).add(th * 16.0 * std::pow(M_PI, 5) / 63.0 * f2 * std::pow(ibe, 6), 2.0);
            r.neq.add(th * c5 * (std::pow(ibs, 5) - std::pow(ibe, 5)), 1.0);
        }
        return r;
    }
    switch (d) {
        case DistRegime::Short: {
            const double f1 = coeff_f(1, eps).value;
            const double f2 = coeff_f(2, eps).value;
            const double f3 = coeff_f(3, eps).value;
            const double c3 = 8.0 * kZeta3 / M_PI * f1;
            const double c4 = 2.0 * std::pow(M_PI, 3) / 15.0;
            r.vac = vac_near;
            r.eq.add(-th * c3 * std::pow(ibe, 3), 1.0).add(-th * c4 * (f2 - f3) * std::pow(ibe, 4), 2.0);
            r.neq.add(-th * c3 * (std::pow(ibs, 3) - std::pow(ibe, 3)), 1.0)
                .add(th * c4 * f3 * (std::pow(ibs, 4) - std::pow(ibe, 4)), 2.0);
            break;
        }
        case DistRegime::Intermediate:
            r.vac = vac_near;
            r.eq.add(th * coeff_f(4, eps).value / 4.0 * ibe, -1.0);
            r.neq.add(th * coeff_f(5, eps).value / 4.0 * (ibs - ibe), -1.0);
            break;
        default:
            r.vac = vac_far;
            r.eq.add(-th * coeff_f(6, eps).value / 2.0 * ibe, -1.0, O::Cos);
            r.neq.add(th * coeff_f(7, eps).value / 4.0 * (ibs - ibe), -3.0);
    }
    return r;
}

namespace {

AsymptoticValue evaluate(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                         const ThermalConfig& thermal, const RegimeLabel& regime, bool force) {
    const DimensionlessParams p = nondimensionalize(atom, medium, thermal, geom);
    const ReducedExpansion e = asymptotic_expansion(p, atom.sign(), regime);
    const ShiftUnit u = shift_unit(atom);
    auto eval = [&](const Series& s) { return force ? -s.slope(p.zbar) : s.value(p.zbar); };
    const double scale = force ? u.force_scale() : u.scale;
    AsymptoticValue v;
    v.regime = regime;
    v.formula_id = e.formula_id;
    const double vac = eval(e.vac), eq = eval(e.eq), neq = eval(e.neq);
    v.value_unit = vac + eq + neq;
    v.vac = vac * scale;
    v.eq = eq * scale;
    v.neq = neq * scale;
    v.value = v.value_unit * scale;
    return v;
}

}  // namespace

AsymptoticValue asymptotic_shift(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                                 const ThermalConfig& thermal, const RegimeLabel& regime) {
    return evaluate(atom, medium, geom, thermal, regime, false);
}

AsymptoticValue asymptotic_force(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                                 const ThermalConfig& thermal, const RegimeLabel& regime) {
    return evaluate(atom, medium, geom, thermal, regime, true);
}

}  // namespace cpforce
