#include "cpforce/engine.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cpforce/asymptotics.hpp"
#include "cpforce/green.hpp"
#include "cpforce/quadrature.hpp"
#include "cpforce/special.hpp"

#include <gsl/gsl_sf_expint.h>

namespace cpforce {

const char* to_string(PartStatus s) {
    switch (s) {
        case PartStatus::Ok: return "ok";
        case PartStatus::NotConverged: return "not-converged";
        default: return "asymptotic";
    }
}

const char* to_string(ForceMethod m) {
    return m == ForceMethod::DifferentiateUnderIntegral ? "differentiate-under-integral" : "central-difference";
}

bool ShiftBreakdown::ok() const {
    return vac.status != PartStatus::NotConverged && eq.status != PartStatus::NotConverged &&
           neq.status != PartStatus::NotConverged;
}

ReducedProblem ReducedProblem::from(const AtomSpec& atom, const MediumSpec& medium, const ThermalConfig& thermal,
                                    const Geometry& geom) {
    if (!medium.is_conductor() && !medium.is_real())
        throw DomainError("the shift engine needs a real permittivity or a perfect conductor");
    const DimensionlessParams d = nondimensionalize(atom, medium, thermal, geom);
    ReducedProblem p;
    p.kernels = d.conductor ? KernelSet::perfect_conductor() : KernelSet::dielectric(d.eps);
    p.sign = atom.sign();
    p.zbar = d.zbar;
    p.bs = d.bs;
    p.be = d.be;
    return p;
}

namespace {

PartValue zero_part() {
    PartValue v;
    v.method = "exact-zero";
    return v;
}

void merge_status(PartValue& into, const quad::QuadResult& r) {
    if (!r.converged) into.status = PartStatus::NotConverged;
}

// ---------------------------------------------------------------- vacuum

PartValue vac1_part(const ReducedProblem& p) {
    const double r = p.kernels.conductor ? 1.0 : (p.kernels.eps - 1.0) / (p.kernels.eps + 1.0);
    const double z = p.zbar;
    PartValue v;
    v.method = "closed-form";
    v.value = -r / (8.0 * z * z * z);
    v.slope = 3.0 * r / (8.0 * z * z * z * z);
    v.err = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v.value);
    v.slope_err = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v.slope);
    return v;
}

PartValue vac2_part(const ReducedProblem& p, const EngineOptions& o) {
    quad::QuadResult m;
    for (Polarization s : kPolarizations) m += quad::scaled(moment1_reduced(s, p.kernels, o.vac_tol), weight(s));
    const double z = p.zbar;
    PartValue v;
    v.method = "closed-form";
    v.value = -p.sign * m.value / (M_PI * z * z);
    v.err = m.abs_err / (M_PI * z * z);
    v.slope = 2.0 * p.sign * m.value / (M_PI * z * z * z);
    v.slope_err = 2.0 * m.abs_err / (M_PI * z * z * z);
    merge_status(v, m);
    return v;
}

PartValue vac3_numeric(const ReducedProblem& p, const EngineOptions& o, bool want_slope) {
    const KernelSet& k = p.kernels;
    const int s = p.sign;
    const double z = p.zbar;
    const double eta = 2.0 * z;
    const double kappa = eta * k.sqrt_em1();
    const double T0 = k.Ttot(0.0);

    quad::Options q;
    q.rel_tol = o.vac_tol;
    q.abs_tol = 0.1 * o.vac_tol / z;
    for (double x : {eta, kappa})
        if (x > 0.0)
            for (double c : {1.0, 35.0})
                if (c / x < 1.0) q.breakpoints.push_back(c / x);
    std::sort(q.breakpoints.begin(), q.breakpoints.end());

    PartValue v;
    v.method = "quadrature";
    quad::QuadResult ia, it, is;
    if (!k.conductor) {
        quad::Integrand h = [&](double t) { return t > 0.0 ? k.Atot(t) * special::k_exp(s, kappa * t) : 0.0; };
        ia = integrate_unit(h, q);
    }
    quad::Integrand ht = [&](double t) { return t > 0.0 ? k.Ttot(t) * special::smooth_cos(s, eta * t) : 0.0; };
    it = integrate_unit(ht, q);
    quad::Integrand tt = [&](double t) { return k.Ttot(t); };
    if (s > 0) is = quad::integrate_fourier(tt, 0.0, 1.0, eta, quad::Trig::Sin, q);
    v.value = -(M_PI * T0 / (4.0 * z) + ia.value + it.value - M_PI * is.value) / M_PI;
    v.err = (ia.abs_err + it.abs_err + M_PI * is.abs_err) / M_PI;
    merge_status(v, ia);
    merge_status(v, it);
    merge_status(v, is);
    if (!want_slope) return v;

    quad::QuadResult da, dt, ds;
    if (!k.conductor) {
        quad::Integrand h = [&](double t) { return t > 0.0 ? k.Atot(t) * special::p_dk_exp(s, kappa * t) : 0.0; };
        da = integrate_unit(h, q);
    }
    quad::Integrand hd = [&](double t) { return t > 0.0 ? k.Ttot(t) * special::smooth_dcos(s, eta * t) : 0.0; };
    dt = integrate_unit(hd, q);
    quad::Integrand tq = [&](double t) { return k.Ttot(t) * eta * t; };
    if (s > 0) ds = quad::integrate_fourier(tq, 0.0, 1.0, eta, quad::Trig::Cos, q);
    v.slope = -(-M_PI * T0 / (4.0 * z * z) + (da.value + dt.value - M_PI * ds.value) / z) / M_PI;
    v.slope_err = (da.abs_err + dt.abs_err + M_PI * ds.abs_err) / (M_PI * z);
    merge_status(v, da);
    merge_status(v, dt);
    merge_status(v, ds);
    return v;
}

ReducedVac vac_parts(const ReducedProblem& p, const EngineOptions& o, bool want_slope) {
    ReducedVac r;
    if (p.kernels.vanishing()) {
        r.vac1 = r.vac2 = r.vac3 = r.total = zero_part();
        return r;
    }
    r.vac1 = vac1_part(p);
    r.vac2 = vac2_part(p, o);
    if (2.0 * p.zbar > o.oscillation_cutoff) {
        // The 1/zbar pieces of vac2 and vac3 cancel to zbar^-4 here; take the
        // series for their sum rather than fighting the cancellation.
        const Series series = vac_long_series(p.kernels, p.sign);
        const double z = p.zbar;
        PartValue v;
        v.method = "asymptotic";
        v.status = PartStatus::Asymptotic;
        v.value = series.value(z) - r.vac1.value - r.vac2.value;
        v.slope = series.slope(z) - r.vac1.slope - r.vac2.slope;
        // First omitted order of the series.
        v.err = 10.0 / std::pow(z, 5);
        v.slope_err = 50.0 / std::pow(z, 6);
        r.vac3 = v;
    } else {
        r.vac3 = vac3_numeric(p, o, want_slope);
    }
    PartValue& t = r.total;
    t.value = r.vac1.value + r.vac2.value + r.vac3.value;
    t.err = r.vac1.err + r.vac2.err + r.vac3.err;
    t.slope = r.vac1.slope + r.vac2.slope + r.vac3.slope;
    t.slope_err = r.vac1.slope_err + r.vac2.slope_err + r.vac3.slope_err;
    t.status = r.vac3.status;
    if (r.vac2.status == PartStatus::NotConverged) t.status = PartStatus::NotConverged;
    t.method = r.vac3.method;
    return r;
}

// ---------------------------------------------------------------- thermal

double bose(double u, double B) { return std::isinf(B) ? 0.0 : 1.0 / std::expm1(B * u); }

struct Weight {
    double b1 = kInf;
    double b2 = kInf;
    bool diff = false;

    double operator()(double u) const { return diff ? bose(u, b1) - bose(u, b2) : bose(u, b1); }
    double bmin() const { return diff ? std::min(b1, b2) : b1; }
};

enum class Kern { Exp, ExpM1, ExpD, Cos, CosM1, CosD };

bool is_cos(Kern k) { return k == Kern::Cos || k == Kern::CosM1 || k == Kern::CosD; }

double kernel(Kern k, double x, double u) {
    const double a = x * u;
    switch (k) {
        case Kern::Exp: return std::exp(-a);
        case Kern::ExpM1: return std::expm1(-a);
        case Kern::ExpD: return a * std::exp(-a);
        case Kern::Cos: return std::cos(a);
        case Kern::CosM1: {
            const double h = std::sin(0.5 * a);
            return -2.0 * h * h;
        }
        case Kern::CosD: return a * std::sin(a);
    }
    return 0.0;
}

double resonance_amplitude(Kern kind, double x, const Weight& w, int s, double u) {
    // br(u) w(u) (u - 1) with the x u factor of the derivative kernel
    double g = -2.0 * s * u * u * u * w(u) / (u + 1.0);
    if (kind == Kern::CosD) g *= x * u;
    return g;
}

// Principal value over [1-r, 1+r] of G(u) trig(x u) / (u - 1) for large x.
// Writing trig(x(1 +- v)) through cos(xv) and sin(xv) leaves two Fourier
// integrals with smooth amplitudes; the constant part of the sine amplitude
// is integrated exactly through Si.
quad::QuadResult oscillatory_fold(Kern kind, double x, const Weight& w, int s, double r, const quad::Options& o) {
    auto G = [&](double u) { return resonance_amplitude(kind, x, w, s, u); };
    const double sp0 = 2.0 * G(1.0);
    quad::Integrand odd = [&](double v) { return (G(1.0 + v) - G(1.0 - v)) / v; };
    quad::Integrand even = [&](double v) { return (G(1.0 + v) + G(1.0 - v) - sp0) / v; };
    const quad::QuadResult ic = quad::integrate_fourier(odd, 0.0, r, x, quad::Trig::Cos, o);
    quad::QuadResult is = quad::integrate_fourier(even, 0.0, r, x, quad::Trig::Sin, o);
    is.value += sp0 * gsl_sf_Si(x * r);
    const double cx = std::cos(x), sx = std::sin(x);
    quad::QuadResult out;
    if (kind == Kern::CosD) {
        out = quad::scaled(ic, sx) + quad::scaled(is, cx);
    } else {
        out = quad::scaled(ic, cx) + quad::scaled(is, -sx);
    }
    out.abs_err = ic.abs_err + is.abs_err;
    return out;
}

// Principal value over u in [0, inf) of br(u) w(u) k(x u), with the resonance
// bracket br(u) = -2 s u^3 / (u^2 - 1).
quad::QuadResult inner(Kern kind, double x, const Weight& w, int s, double tol) {
    auto bracket = [s](double u) { return -2.0 * s * u * u * u / ((u - 1.0) * (u + 1.0)); };
    quad::Integrand f = [&](double u) { return u > 0.0 ? bracket(u) * w(u) * kernel(kind, x, u) : 0.0; };
    quad::Integrand f0 = [&](double u) { return u > 0.0 ? bracket(u) * w(u) : 0.0; };
    quad::Integrand f1 = [&](double u) { return x * u * f0(u); };
    const double bmin = w.bmin();
    const double ymax = quad::bose_y_max(tol);
    const bool decays = kind == Kern::Exp || kind == Kern::ExpD;
    const double U = ymax / (bmin + (decays ? x : 0.0));

    std::vector<double> scales;
    for (double B : {w.b1, w.b2})
        if (std::isfinite(B)) {
            scales.push_back(1.0 / B);
            scales.push_back(10.0 / B);
        }
    if (x > 0.0) {
        scales.push_back(1.0 / x);
        scales.push_back(10.0 / x);
    }
    auto opts_on = [&](double a, double b, double abs_tol) {
        quad::Options o;
        o.rel_tol = tol;
        o.abs_tol = abs_tol;
        for (double c : scales)
            if (c > a && c < b) o.breakpoints.push_back(c);
        std::sort(o.breakpoints.begin(), o.breakpoints.end());
        return o;
    };
    // Segment away from the resonance; many periods go to the Fourier rule.
    auto segment = [&](double a, double b, double abs_tol) {
        const quad::Options o = opts_on(a, b, abs_tol);
        if (!is_cos(kind) || x * (b - a) <= 40.0 * M_PI) return quad::integrate_adaptive(f, a, b, o);
        quad::Options fo = o;
        fo.breakpoints.clear();
        if (kind == Kern::CosD) return quad::integrate_fourier(f1, a, b, x, quad::Trig::Sin, fo);
        quad::QuadResult r = quad::integrate_fourier(f0, a, b, x, quad::Trig::Cos, fo);
        if (kind == Kern::CosM1) r += quad::scaled(quad::integrate_adaptive(f0, a, b, o), -1.0);
        return r;
    };

    if (U <= 0.5) return segment(0.0, U, 0.0);
    quad::QuadResult out = segment(0.0, 0.5, 0.0);
    quad::Options near;
    near.rel_tol = tol;
    near.abs_tol = 0.1 * tol * std::abs(out.value);
    if (is_cos(kind) && x > 16.0 * M_PI) {
        out += oscillatory_fold(kind, x, w, s, 0.5, near);
        if (kind == Kern::CosM1) out += quad::scaled(quad::integrate_pv(f0, 0.5, 1.5, 1.0, {near, 0.0}), -1.0);
    } else {
        out += quad::integrate_pv(f, 0.5, 1.5, 1.0, {near, 0.0});
    }
    if (U <= 1.5) return out;
    out += segment(1.5, U, 0.1 * tol * std::abs(out.value));
    return out;
}

struct ThermalSetup {
    const ReducedProblem& p;
    const EngineOptions& o;
    Weight w;
    bool use_T;    // eq uses both kernels, neq only the evanescent one
    bool contact;  // subtract the z -> 0 limit
};

bool use_contact(const ReducedProblem& p, const EngineOptions& o, double bmin) {
    using R = EngineOptions::ThermalReference;
    if (o.thermal_reference != R::Auto) return o.thermal_reference == R::Contact;
    const double reach = 2.0 * p.zbar * (p.kernels.conductor ? 1.0 : std::max(1.0, p.kernels.sqrt_em1()));
    return reach < bmin;
}

// Reference choice per thermal part, frozen at the centre point of a
// finite-difference stencil.
struct References {
    bool eq = false, neq = false;
};

References references(const ReducedProblem& p, const EngineOptions& o) {
    return {use_contact(p, o, p.be), use_contact(p, o, std::min(p.bs, p.be))};
}

// (1/pi) int dt [Atot E(kappa t) + Ttot C(eta t)] and its zbar-derivative.
PartValue thermal_part(const ThermalSetup& st, bool want_slope) {
    const KernelSet& k = st.p.kernels;
    const int s = st.p.sign;
    const double z = st.p.zbar;
    const double eta = 2.0 * z;
    const double kappa = eta * k.sqrt_em1();
    const double itol = 0.1 * st.o.thermal_tol;
    const bool use_A = !k.conductor;
    const bool use_T = st.use_T;
    const Kern ke = st.contact ? Kern::ExpM1 : Kern::Exp;
    const Kern kc = st.contact ? Kern::CosM1 : Kern::Cos;

    quad::Options q;
    q.rel_tol = st.o.thermal_tol;
    std::vector<double> bps;
    for (double x : {kappa, eta}) {
        if (!(x > 0.0)) continue;
        bps.push_back(1.0 / x);
        for (double B : {st.w.b1, st.w.b2})
            if (std::isfinite(B)) bps.push_back(B / x);
    }
    for (double b : bps)
        if (b > 0.0 && b < 1.0) q.breakpoints.push_back(b);
    std::sort(q.breakpoints.begin(), q.breakpoints.end());

    PartValue v;
    v.method = st.contact ? "quadrature.contact" : "quadrature";
    bool inner_ok = true;
    auto run = [&](Kern ka, Kern kt, double& value, double& err) {
        double inner_err = 0.0;
        quad::Integrand h = [&](double t) {
            double acc = 0.0, e = 0.0;
            if (use_A) {
                const double a = k.Atot(t);
                if (a != 0.0) {
                    const quad::QuadResult r = inner(ka, kappa * t, st.w, s, itol);
                    inner_ok = inner_ok && r.converged;
                    acc += a * r.value;
                    e += std::abs(a) * r.abs_err;
                }
            }
            if (use_T) {
                const double tt = k.Ttot(t);
                const quad::QuadResult r = inner(kt, eta * t, st.w, s, itol);
                inner_ok = inner_ok && r.converged;
                acc += tt * r.value;
                e += std::abs(tt) * r.abs_err;
            }
            inner_err = std::max(inner_err, e);
            return acc;
        };
        const quad::QuadResult r = integrate_unit(h, q);
        merge_status(v, r);
        value = r.value;
        err = r.abs_err + inner_err;
    };
    double val, err;
    run(ke, kc, val, err);
    v.value = val / M_PI;
    v.err = err / M_PI;
    if (want_slope) {
        run(Kern::ExpD, Kern::CosD, val, err);
        v.slope = -val / (M_PI * z);
        v.slope_err = err / (M_PI * z);
    }
    if (!inner_ok) v.status = PartStatus::NotConverged;
    return v;
}

PartValue eq_part(const ReducedProblem& p, const EngineOptions& o, bool want_slope, bool contact) {
    if (p.kernels.vanishing() || std::isinf(p.be)) return zero_part();
    return thermal_part({p, o, Weight{p.be, kInf, false}, true, contact}, want_slope);
}

PartValue neq_part(const ReducedProblem& p, const EngineOptions& o, bool want_slope, bool contact) {
    // Equal temperatures give an identically vanishing weight.
    if (p.kernels.vanishing() || p.kernels.conductor || p.bs == p.be) return zero_part();
    const Weight w{p.bs, p.be, true};
    PartValue v = thermal_part({p, o, w, false, contact}, want_slope);
    if (o.include_g21) {
        const quad::QuadResult g21 = g21_reduced(p.kernels.eps, GreenOptions{0.1 * o.thermal_tol, false});
        const quad::QuadResult d0 = inner(Kern::Exp, 0.0, w, p.sign, 0.1 * o.thermal_tol);
        v.value += 2.0 * g21.value * d0.value;
        v.err += 2.0 * (std::abs(g21.value) * d0.abs_err + g21.abs_err * std::abs(d0.value));
    }
    return v;
}

// ---------------------------------------------------------------- force by differences

struct Parts {
    PartValue vac, eq, neq;
};

Parts all_parts(const ReducedProblem& p, const EngineOptions& o, bool want_slope, const References& ref) {
    return {vac_parts(p, o, want_slope).total, eq_part(p, o, want_slope, ref.eq),
            neq_part(p, o, want_slope, ref.neq)};
}

Parts central_difference(const ReducedProblem& p, const EngineOptions& o) {
    const double h = o.fd_step * p.zbar;
    const References ref = references(p, o);
    Parts at[4];
    const double offs[4] = {-2.0, -1.0, 1.0, 2.0};
    for (int i = 0; i < 4; ++i) {
        ReducedProblem q = p;
        q.zbar = p.zbar + offs[i] * h;
        at[i] = all_parts(q, o, false, ref);
    }
    Parts out = all_parts(p, o, false, ref);
    auto diff = [&](PartValue Parts::*m, PartValue& into) {
        const double fm2 = (at[0].*m).value, fm1 = (at[1].*m).value;
        const double fp1 = (at[2].*m).value, fp2 = (at[3].*m).value;
        const double d5 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        const double d3 = (fp1 - fm1) / (2.0 * h);
        double noise = 0.0;
        for (const auto& a : at) noise += (a.*m).err;
        into.slope = d5;
        into.slope_err = 1.5 * noise / h + 0.1 * std::abs(d5 - d3);
        for (const auto& a : at)
            if ((a.*m).status == PartStatus::NotConverged) into.status = PartStatus::NotConverged;
    };
    diff(&Parts::vac, out.vac);
    diff(&Parts::eq, out.eq);
    diff(&Parts::neq, out.neq);
    return out;
}

PartSI energy_si(const PartValue& v, double scale) { return {v.value * scale, v.err * scale, v.status, v.method}; }
PartSI force_si(const PartValue& v, double fscale) {
    return {-v.slope * fscale, v.slope_err * fscale, v.status, v.method};
}

}  // namespace

ReducedVac reduced_vac(const ReducedProblem& p, const EngineOptions& opts) { return vac_parts(p, opts, true); }
PartValue reduced_eq(const ReducedProblem& p, const EngineOptions& opts) {
    return eq_part(p, opts, true, references(p, opts).eq);
}
PartValue reduced_neq(const ReducedProblem& p, const EngineOptions& opts) {
    return neq_part(p, opts, true, references(p, opts).neq);
}

VacBreakdown shift_vac(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                       const EngineOptions& opts) {
    const ReducedProblem p = ReducedProblem::from(atom, medium, ThermalConfig::zero(), geom);
    const double u = shift_unit(atom).scale;
    const ReducedVac r = vac_parts(p, opts, false);
    return {energy_si(r.vac1, u), energy_si(r.vac2, u), energy_si(r.vac3, u), energy_si(r.total, u)};
}

PartSI shift_eq(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom, double beta_e,
                const EngineOptions& opts) {
    const ReducedProblem p = ReducedProblem::from(atom, medium, ThermalConfig{kInf, beta_e}, geom);
    return energy_si(eq_part(p, opts, false, references(p, opts).eq), shift_unit(atom).scale);
}

PartSI shift_neq(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                 const ThermalConfig& thermal, const EngineOptions& opts) {
    const ReducedProblem p = ReducedProblem::from(atom, medium, thermal, geom);
    return energy_si(neq_part(p, opts, false, references(p, opts).neq), shift_unit(atom).scale);
}

ShiftBreakdown total_shift(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                           const ThermalConfig& thermal, const EngineOptions& opts) {
    const ReducedProblem p = ReducedProblem::from(atom, medium, thermal, geom);
    const double u = shift_unit(atom).scale;
    ShiftBreakdown b;
    b.unit = u;
    b.vac_detail = vac_parts(p, opts, false);
    b.vac = energy_si(b.vac_detail.total, u);
    const References ref = references(p, opts);
    b.eq = energy_si(eq_part(p, opts, false, ref.eq), u);
    b.neq = energy_si(neq_part(p, opts, false, ref.neq), u);
    b.total = b.vac.value + b.eq.value + b.neq.value;
    b.total_err = b.vac.err + b.eq.err + b.neq.err;
    return b;
}

ForceBreakdown force(const AtomSpec& atom, const MediumSpec& medium, const Geometry& geom,
                     const ThermalConfig& thermal, ForceMethod method, const EngineOptions& opts) {
    const ReducedProblem p = ReducedProblem::from(atom, medium, thermal, geom);
    const double fs = shift_unit(atom).force_scale();
    const Parts parts = method == ForceMethod::DifferentiateUnderIntegral ? all_parts(p, opts, true, references(p, opts))
                                                                          : central_difference(p, opts);
    ForceBreakdown f;
    f.method = method;
    f.vac = force_si(parts.vac, fs);
    f.eq = force_si(parts.eq, fs);
    f.neq = force_si(parts.neq, fs);
    f.total.value = f.vac.value + f.eq.value + f.neq.value;
    f.total.err = f.vac.err + f.eq.err + f.neq.err;
    f.total.method = to_string(method);
    for (const PartSI* x : {&f.vac, &f.eq, &f.neq})
        if (x->status == PartStatus::NotConverged) f.total.status = PartStatus::NotConverged;
    return f;
}

}  // namespace cpforce
