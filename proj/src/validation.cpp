#include "cpforce/validation.hpp"

#include <gsl/gsl_sf_expint.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cpforce/asymptotics.hpp"
#include "cpforce/engine.hpp"
#include "cpforce/green.hpp"
#include "cpforce/kernels.hpp"
#include "cpforce/quadrature.hpp"
#include "cpforce/records.hpp"

#ifndef CPFORCE_REFERENCE_FILE
#define CPFORCE_REFERENCE_FILE "tests/data/reference_v1.json"
#endif

namespace cpforce {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "Pass";
        case CheckStatus::Fail: return "Fail";
        default: return "Inconclusive";
    }
}

CheckStatus check_status_from_string(const std::string& s) {
    if (s == "Pass") return CheckStatus::Pass;
    if (s == "Fail") return CheckStatus::Fail;
    if (s == "Inconclusive") return CheckStatus::Inconclusive;
    throw std::invalid_argument("unknown check status: " + s);
}

bool within_tolerance(const CheckResult& r) {
    const double scale = std::max(std::abs(r.expected), r.floor);
    return std::abs(r.measured - r.expected) <= r.tolerance * scale;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return format_number(v); }

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// A check fills measured/expected/tolerance/floor and may veto the verdict.
struct Outcome {
    CheckResult r;
    bool extra_ok = true;
};

Outcome relative(double measured, double expected, double tol) {
    Outcome o;
    o.r.measured = measured;
    o.r.expected = expected;
    o.r.tolerance = tol;
    return o;
}

// Worst deviation against zero with unit scale: pass iff worst <= tol.
Outcome worst_case(double worst, double tol) {
    Outcome o;
    o.r.measured = worst;
    o.r.expected = 0.0;
    o.r.tolerance = tol;
    o.r.floor = 1.0;
    return o;
}

ReducedProblem reduced(const KernelSet& k, int sign, double zbar, double bs, double be) {
    ReducedProblem p;
    p.kernels = k;
    p.sign = sign;
    p.zbar = zbar;
    p.bs = bs;
    p.be = be;
    return p;
}

AtomSpec test_atom(State state) { return AtomSpec::from_wavelength(1e-6, 1e-39, state); }

// ---------------------------------------------------------------- checks

Outcome conductor_reduction() {
    double worst = 0.0;
    const cplx eps(1e8, 0.0);
    for (double z : {1e-8, 1e-7, 1e-6}) {
        for (double k : {0.3, 1.0, 3.0}) {
            const double omega = k * phys::c / z;
            const double g1 = g11(z, omega, eps) + g12(z, omega, eps);
            worst = std::max(worst, rel_err(g1, conductor_f(z, omega)));
        }
    }
    Outcome o = worst_case(worst, 1e-3);
    o.r.detail = "max relative deviation of g11+g12 at eps=1e8 from the conductor kernel";
    return o;
}

Outcome vacuum_short_distance() {
    const AtomSpec atom = test_atom(State::Ground);
    const double zbar = 1e-2;
    const ShiftBreakdown b = total_shift(atom, MediumSpec::real(2.0), Geometry{zbar * atom.lambda0()},
                                         ThermalConfig::zero());
    const double law = -(1.0 / 3.0) / (8.0 * zbar * zbar * zbar);
    Outcome o = relative(b.total_unit(), law, 0.02);
    o.r.detail = "total shift in shift units at eps=2, zbar=1e-2, T=0";
    return o;
}

Outcome g_consistency() {
    double worst = 0.0;
    for (double eps : {2.0, 4.0, 10.0}) {
        const double numeric = 2.0 * g_sigma_numeric(Polarization::Parallel, eps).value +
                               g_sigma_numeric(Polarization::Perpendicular, eps).value;
        worst = std::max(worst, rel_err(numeric, coeff_g(eps)));
    }
    int positive = 0;
    for (int k = 1; k <= 20; ++k) {
        const double eps = 1.0 + 99.0 * std::pow(k / 20.0, 3);
        if (!(coeff_g(eps) < 0.0)) ++positive;
    }
    Outcome o = worst_case(worst, 1e-6);
    o.extra_ok = positive == 0;
    o.r.detail = "closed form vs quadrature assembly; non-negative samples on (1,100]: " + std::to_string(positive);
    return o;
}

Outcome conductor_long_ground() {
    const AtomSpec atom = test_atom(State::Ground);
    const double zbar = 30.0;
    const ShiftBreakdown b =
        total_shift(atom, MediumSpec::conductor(), Geometry{zbar * atom.lambda0()}, ThermalConfig::zero());
    const double law = -3.0 / (8.0 * M_PI * std::pow(zbar, 4));
    Outcome o = relative(b.total_unit(), law, 0.03);
    o.r.detail = "conductor total shift in shift units at zbar=30, T=0";
    return o;
}

Outcome lowT_eq_intermediate() {
    const double eps = 2.0, zbar = 5.0, be = 500.0;
    const PartValue eq = reduced_eq(reduced(KernelSet::dielectric(eps), -1, zbar, kInf, be));
    const double f1 = coeff_f(1, eps).value, f2 = coeff_f(2, eps).value;
    const double law = 96.0 * kZeta5 / M_PI * f1 * zbar / std::pow(be, 5) +
                       16.0 * std::pow(M_PI, 5) / 63.0 * f2 * zbar * zbar / std::pow(be, 6);
    Outcome o = relative(eq.value, law, 0.05);
    o.r.detail = "ground eq part in shift units at eps=2, zbar=5, be=500";
    return o;
}

// Criterion 6 and 7 share this regime: 2 zbar sqrt(eps-1) / min(bs, be) >= 50.
constexpr double kLongBs = 50.0, kLongBe = 100.0, kLongZ = 1500.0;

double neq_long_law(double eps, double zbar, double bs, double be) {
    return -(M_PI / (12.0 * zbar * zbar)) * (eps + 1.0) / std::sqrt(eps - 1.0) * (1.0 / (bs * bs) - 1.0 / (be * be));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome lowT_neq_long() {
    const double eps = 2.0;
    const KernelSet k = KernelSet::dielectric(eps);
    const PartValue neq = reduced_neq(reduced(k, -1, kLongZ, kLongBs, kLongBe));
    std::vector<double> zs{1500.0, 2000.0, 3000.0}, forces;
    for (double z : zs) forces.push_back(-reduced_neq(reduced(k, -1, z, kLongBs, kLongBe)).slope);
    const double slope = loglog_slope(zs, forces);
    Outcome o = relative(neq.value, neq_long_law(eps, kLongZ, kLongBs, kLongBe), 0.05);
    o.extra_ok = std::abs(slope + 3.0) <= 0.15;
    o.r.detail = "ground neq at zbar=1500, bs=50, be=100; force log-log slope " + fmt(slope);
    return o;
}

Outcome neq_sign_law() {
    const AtomSpec atom = test_atom(State::Ground);
    const MediumSpec medium = MediumSpec::real(2.0);
    const Geometry geom{kLongZ * atom.lambda0()};
    const double l0 = atom.lambda0();
    const ThermalConfig hot_surface{kLongBs * l0, kLongBe * l0};  // shorter wavelength = hotter
    const ThermalConfig cold_surface{kLongBe * l0, kLongBs * l0};
    const ForceBreakdown f_hot = force(atom, medium, geom, hot_surface);
    const ForceBreakdown f_cold = force(atom, medium, geom, cold_surface);
    const double a = shift_neq(atom, medium, geom, hot_surface).value;
    const double b = shift_neq(atom, medium, geom, cold_surface).value;
    const double asym = std::abs(a + b) / std::abs(a);
    Outcome o = worst_case(asym, 1e-12);
    // The surface pulls the atom toward z = 0, so attraction is F < 0.
    o.extra_ok = f_hot.total.value < 0.0 && f_cold.total.value > 0.0;
    o.r.detail = "neq antisymmetry under swap; F(Ts>Te)=" + fmt(f_hot.total.value) +
                 " N, F(Ts<Te)=" + fmt(f_cold.total.value) + " N";
    return o;
}

Outcome highT_intermediate() {
    const double eps = 2.0, zbar = 0.02, bs = 0.001, be = 0.002;
    const KernelSet k = KernelSet::dielectric(eps);
    const ReducedProblem p = reduced(k, -1, zbar, bs, be);
    const double eq = reduced_eq(p).value, neq = reduced_neq(p).value;
    const double eq_law = coeff_f(4, eps).value / (4.0 * be * zbar);
    const double neq_law = coeff_f(5, eps).value * (1.0 / bs - 1.0 / be) / (4.0 * zbar);
    const double e1 = rel_err(eq, eq_law), e2 = rel_err(neq, neq_law);
    Outcome o = worst_case(std::max(e1, e2), 0.05);
    o.r.detail = "eps=2, zbar=0.02, bs=0.001, be=0.002; eq rel err " + fmt(e1) + ", neq rel err " + fmt(e2);
    return o;
}

// Five-point central difference at t = 0. The kernels have poles at distance
// about 1/sqrt(eps+1) and 1/sqrt(eps^2-1) from the origin, so h scales with them.
double fd_at_zero(const std::function<double(double)>& f, double eps) {
    const double reach = std::min({1.0 / std::sqrt(eps + 1.0), 1.0 / std::sqrt(eps * eps - 1.0), std::sqrt(eps - 1.0)});
    const double h = 2e-3 * reach;
    return (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h);
}

Outcome tprime_a_relation() {
    double worst = 0.0;
    for (double eps : {1.2, 2.0, 4.0, 16.0, 100.0}) {
        for (Polarization s : kPolarizations) {
            const KernelEndpointData e = kernel_endpoints(s, eps);
            worst = std::max(worst, rel_err((eps - 1.0) * e.dT0, e.dA0));
            const double dT = fd_at_zero([&](double t) { return kern::T(s, t, eps); }, eps);
            const double dA = fd_at_zero([&](double t) { return kern::A(s, t, eps); }, eps);
            worst = std::max(worst, rel_err((eps - 1.0) * dT, dA));
        }
    }
    Outcome o = worst_case(worst, 1e-8);
    o.r.detail = "max relative mismatch over analytic endpoints and finite differences";
    return o;
}

Outcome equilibrium_switch_off() {
    double worst = 0.0;
    const AtomSpec atom = test_atom(State::Ground);
    const double l0 = atom.lambda0();
    const double temps[] = {1.0, 30.0, 300.0, 3000.0, 30000.0};
    const double zbars[] = {0.05, 3.0};
    for (double T : temps) {
        for (double zb : zbars) {
            const ThermalConfig th = ThermalConfig::from_temperatures(T, T);
            const double v = shift_neq(atom, MediumSpec::real(2.0), Geometry{zb * l0}, th).value;
            worst = std::max(worst, std::abs(v / shift_unit(atom).scale));
        }
    }
    Outcome o = worst_case(worst, 1e-14);
    o.r.detail = "max |neq| in shift units with Ts = Te on 10 points";
    return o;
}

Outcome force_methods() {
    struct Point {
        KernelSet k;
        int sign;
        double zbar, bs, be;
    };
    const KernelSet d2 = KernelSet::dielectric(2.0), d10 = KernelSet::dielectric(10.0);
    const KernelSet pc = KernelSet::perfect_conductor();
    const std::vector<Point> grid{
        {d2, -1, 0.3, 2.0, 3.0},  {d2, -1, 1.0, 2.0, 3.0},  {d2, -1, 3.0, 2.0, 3.0},
        {d2, 1, 0.3, 2.0, 3.0},   {d2, 1, 1.0, 2.0, 3.0},   {d2, 1, 3.0, 2.0, 3.0},
        {d10, -1, 0.5, 5.0, 1.0}, {d10, -1, 2.0, 5.0, 1.0}, {d10, 1, 0.7, 5.0, 1.0},
        {pc, -1, 0.5, 3.0, 3.0},  {pc, -1, 2.0, 3.0, 3.0},  {pc, 1, 1.0, 3.0, 3.0},
    };
    EngineOptions opts;
    opts.thermal_tol = 1e-10;
    double worst = 0.0;
    for (const Point& g : grid) {
        const AtomSpec atom = test_atom(g.sign < 0 ? State::Ground : State::Excited);
        const double l0 = atom.lambda0();
        const MediumSpec m = g.k.conductor ? MediumSpec::conductor() : MediumSpec::real(g.k.eps);
        const Geometry geom{g.zbar * l0};
        const ThermalConfig th{g.bs * l0, g.be * l0};
        const double a = force(atom, m, geom, th, ForceMethod::DifferentiateUnderIntegral, opts).total.value;
        const double b = force(atom, m, geom, th, ForceMethod::CentralDifference, opts).total.value;
        worst = std::max(worst, rel_err(b, a));
    }
    Outcome o = worst_case(worst, 1e-4);
    o.r.detail = "max relative gap between analytic-slope and central-difference forces on 12 points";
    return o;
}

Outcome quadrature_corpus() {
    struct Case {
        std::function<quad::QuadResult()> run;
        double exact;
    };
    using quad::Integrand;
    const double tol = 1e-10;
    auto bose = [tol](Integrand g, double B) { return [g, B, tol] { return quad::integrate_bose(g, B, tol); }; };
    auto fourier = [tol](Integrand f, double b, double w, quad::Trig kind) {
        return [f, b, w, kind, tol] {
            quad::Options o;
            o.rel_tol = tol;
            return quad::integrate_fourier(f, 0.0, b, w, kind, o);
        };
    };
    auto plain = [tol](Integrand f, double a, double b) {
        return [f, a, b, tol] { return quad::integrate_adaptive(f, a, b, tol); };
    };
    auto pv = [tol](Integrand f, double a, double b) {
        return [f, a, b, tol] { return quad::integrate_pv(f, a, b, 1.0, tol); };
    };
    const double pi = M_PI;
    const std::vector<Case> cases{
        {bose([](double u) { return u * u * u; }, 1.0), std::pow(pi, 4) / 15.0},
        {bose([](double u) { return std::pow(u, 4); }, 1.0), 24.0 * kZeta5},
        {bose([](double u) { return u; }, 1.0), pi * pi / 6.0},
        {bose([](double u) { return u * u; }, 1.0), 2.0 * kZeta3},
        {bose([](double u) { return std::pow(u, 5); }, 1.0), 8.0 * std::pow(pi, 6) / 63.0},
        {bose([](double u) { return u * u * u; }, 2.0), std::pow(pi, 4) / 240.0},
        {fourier([](double x) { return std::exp(-x); }, 60.0, 3.0, quad::Trig::Cos), 0.1},
        {fourier([](double x) { return std::exp(-x); }, 60.0, 3.0, quad::Trig::Sin), 0.3},
        {fourier([](double x) { return std::exp(-2.0 * x); }, 30.0, 50.0, quad::Trig::Cos), 2.0 / 2504.0},
        {fourier([](double x) { return x * std::exp(-x); }, 60.0, 2.0, quad::Trig::Cos), -3.0 / 25.0},
        {fourier([](double x) { return std::exp(-0.5 * x); }, 100.0, 20.0, quad::Trig::Sin), 20.0 / 400.25},
        {plain([](double x) { return std::sqrt(x); }, 0.0, 1.0), 2.0 / 3.0},
        {plain([](double x) { return std::sin(x); }, 0.0, pi), 2.0},
        {plain([](double x) { return std::log(x); }, 0.0, 1.0), -1.0},
        {plain([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0), pi / 4.0},
        {plain([](double x) { return std::exp(-x * x); }, 0.0, 10.0), 0.5 * std::sqrt(pi) * std::erf(10.0)},
        {plain([](double x) { return std::pow(std::cos(10.0 * x), 2); }, 0.0, 2.0 * pi), pi},
        {pv([](double x) { return 1.0 / (x - 1.0); }, 0.0, 3.0), std::log(2.0)},
        {pv([](double x) { return std::exp(x) / (x - 1.0); }, 0.0, 2.0),
         M_E * (gsl_sf_expint_Ei(1.0) - gsl_sf_expint_Ei(-1.0))},
        {pv([](double x) { return x * x / (x - 1.0); }, 0.0, 2.0), 4.0},
    };
    int good = 0;
    for (const Case& c : cases) {
        const quad::QuadResult r = c.run();
        // A few ulps of slack for results whose error estimate rounds to zero.
        const double bar = 3.0 * r.abs_err + 4.0 * 2.2e-16 * std::abs(c.exact);
        if (std::abs(r.value - c.exact) <= bar) ++good;
    }
    const double frac = static_cast<double>(good) / static_cast<double>(cases.size());
    Outcome o;
    o.r.measured = frac;
    o.r.expected = 1.0;
    o.r.tolerance = 0.05;
    o.r.detail = std::to_string(good) + " of " + std::to_string(cases.size()) + " within 3x the error bar";
    return o;
}

// ---------------------------------------------------------------- supplementary

nlohmann::json load_reference() {
    const std::string path = reference_file_path();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("reference file not found: " + path);
    return nlohmann::json::parse(in);
}

Outcome frozen_oracles() {
    const nlohmann::json ref = load_reference().at("values");
    auto want = [&](const std::string& key) { return ref.at(key).get<double>(); };
    double worst = 0.0;
    for (int eps : {2, 4, 10}) {
        const std::string e = "eps" + std::to_string(eps);
        worst = std::max(worst, rel_err(g_sigma_numeric(Polarization::Parallel, eps).value, want("g_sigma.par." + e)));
        worst = std::max(worst,
                         rel_err(g_sigma_numeric(Polarization::Perpendicular, eps).value, want("g_sigma.perp." + e)));
    }
    for (int eps : {2, 4}) {
        const std::string e = "eps" + std::to_string(eps);
        worst = std::max(worst, rel_err(coeff_f(2, eps).value, want("f2." + e)));
        worst = std::max(worst, rel_err(coeff_f(3, eps).value, want("f3." + e)));
    }
    const std::pair<const char*, double> xs[] = {{"0.5", 0.5}, {"2", 2.0}, {"10", 10.0}};
    for (const auto& [label, x] : xs) {
        for (Polarization s : kPolarizations) {
            const std::string key = std::string("f_sigma.") + (s == Polarization::Parallel ? "par" : "perp") +
                                    ".eps2.x" + label;
            worst = std::max(worst, rel_err(f_sigma(s, x, 2.0, 1e-12).value, want(key)));
        }
    }
    Outcome o = worst_case(worst, 1e-8);
    o.r.detail = "max relative deviation from " + reference_file_path();
    return o;
}

// Numeric vs closed-form blocks at points whose regime margins are all >= 50.
Outcome regime_agreement() {
    struct Point {
        double eps;
        int sign;
        double zbar, bs, be;
    };
    const std::vector<Point> grid{
        {2.0, -1, 0.002, 500.0, 1000.0},  // low-T short
        {2.0, 1, 0.002, 500.0, 1000.0},
        {4.0, -1, 0.00005, 0.01, 0.02},   // high-T short
        {2.0, -1, 100.0, 0.01, 0.02},     // high-T long; neq is left out, see below
    };
    double worst = 0.0;
    std::string where;
    for (const Point& g : grid) {
        DimensionlessParams dp;
        dp.zbar = g.zbar;
        dp.bs = g.bs;
        dp.be = g.be;
        dp.eps = g.eps;
        const RegimeLabel label = classify_regime(dp, 50.0);
        if (!label.resolved()) throw std::logic_error("regime grid point is not resolved at margin 50");
        const ReducedExpansion e = asymptotic_expansion(dp, g.sign, label);
        const ReducedProblem p = reduced(KernelSet::dielectric(g.eps), g.sign, g.zbar, g.bs, g.be);
        std::vector<std::pair<double, double>> pairs{{reduced_vac(p).total.value, e.vac.value(g.zbar)},
                                                     {reduced_eq(p).value, e.eq.value(g.zbar)}};
        // The high-T long neq block only holds while zbar*beta/lambda0 << 1 as
        // well, which the classifier does not test.
        if (label.distance != DistRegime::Long) pairs.push_back({reduced_neq(p).value, e.neq.value(g.zbar)});
        for (const auto& [num, asym] : pairs) {
            const double d = rel_err(num, asym);
            if (d > worst) {
                worst = d;
                where = label.str() + " zbar=" + fmt(g.zbar);
            }
        }
    }
    Outcome o = worst_case(worst, 0.05);
    o.r.detail = "worst block at " + where;
    return o;
}

// ---------------------------------------------------------------- registry

struct Entry {
    CheckInfo info;
    std::function<Outcome()> run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r{
        {{"conductor.g1_matches_f", 1, 10.0, "eps=1e8 kernels reproduce the conductor kernel"}, conductor_reduction},
        {{"vacuum.short_distance_law", 2, 30.0, "z^-3 law at zbar=1e-2"}, vacuum_short_distance},
        {{"asymptotics.g_consistency", 3, 20.0, "closed-form g(eps) vs quadrature; g < 0"}, g_consistency},
        {{"conductor.long_distance_ground", 4, 30.0, "conductor z^-4 law at zbar=30"}, conductor_long_ground},
        {{"lowT.eq_intermediate", 5, 60.0, "low-T intermediate eq asymptote"}, lowT_eq_intermediate},
        {{"lowT.neq_long_law", 6, 120.0, "low-T long neq z^-2 law and z^-3 force"}, lowT_neq_long},
        {{"lowT.neq_sign_law", 7, 60.0, "force sign follows Ts - Te; neq antisymmetry"}, neq_sign_law},
        {{"highT.intermediate_coefficients", 8, 120.0, "high-T intermediate eq/neq coefficients"},
         highT_intermediate},
        {{"kernels.TprimeA_relation", 9, 1.0, "(eps-1) T'(0) = A'(0)"}, tprime_a_relation},
        {{"neq.equilibrium_switch_off", 10, 30.0, "Ts = Te gives neq = 0"}, equilibrium_switch_off},
        {{"force.method_agreement", 11, 120.0, "analytic slope vs central difference"}, force_methods},
        {{"quadrature.honesty_corpus", 12, 10.0, "closed-form integrals inside 3x error bars"}, quadrature_corpus},
        {{"reference.frozen_oracles", 0, 30.0, "regression against brute-force oracle values"}, frozen_oracles},
        {{"asymptotics.regime_agreement", 0, 60.0, "closed-form blocks vs numerics at margin 50"},
         regime_agreement},
    };
    return r;
}

const Entry* find_entry(const std::string& id) {
    for (const Entry& e : registry())
        if (e.info.id == id) return &e;
    return nullptr;
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
    static const std::vector<CheckInfo> c = [] {
        std::vector<CheckInfo> v;
        for (const Entry& e : registry()) v.push_back(e.info);
        return v;
    }();
    return c;
}

bool is_known_check(const std::string& id) { return find_entry(id) != nullptr; }

std::vector<std::string> all_check_ids() {
    std::vector<std::string> ids;
    for (const CheckInfo& c : check_catalog()) ids.push_back(c.id);
    return ids;
}

std::vector<std::string> acceptance_check_ids() {
    std::vector<std::string> ids;
    for (const CheckInfo& c : check_catalog())
        if (c.criterion > 0) ids.push_back(c.id);
    return ids;
}

std::string reference_file_path() {
    if (const char* env = std::getenv("CPFORCE_REFERENCE"); env && *env) return env;
    return CPFORCE_REFERENCE_FILE;
}

CheckResult run_check(const std::string& id) {
    const Entry* e = find_entry(id);
    if (!e) throw std::invalid_argument("unknown check id: " + id);
    const auto t0 = Clock::now();
    CheckResult r;
    try {
        Outcome o = e->run();
        r = o.r;
        r.check_id = id;
        r.runtime = seconds_since(t0);
        const bool in_time = r.runtime <= e->info.time_limit;
        r.status = within_tolerance(r) && o.extra_ok && in_time ? CheckStatus::Pass : CheckStatus::Fail;
        if (!in_time) r.detail += "; exceeded time limit " + fmt(e->info.time_limit) + " s";
    } catch (const std::exception& ex) {
        r = CheckResult{};
        r.check_id = id;
        r.runtime = seconds_since(t0);
        r.status = CheckStatus::Fail;
        r.measured = std::nan("");
        r.detail = std::string("error: ") + ex.what();
    }
    return r;
}

std::vector<CheckResult> run_suite(const std::vector<std::string>& selection, double budget) {
    if (selection.empty()) throw std::invalid_argument("empty check selection");
    for (const std::string& id : selection)
        if (!is_known_check(id)) throw std::invalid_argument("unknown check id: " + id);
    const auto t0 = Clock::now();
    std::vector<CheckResult> out;
    for (const std::string& id : selection) {
        if (!(seconds_since(t0) < budget)) {
            CheckResult r;
            r.check_id = id;
            r.measured = std::nan("");
            r.detail = "budget exhausted";
            out.push_back(r);
            continue;
        }
        out.push_back(run_check(id));
    }
    return out;
}

std::string to_jsonl(const CheckResult& r) {
    // Numbers are spliced in by hand to keep 17 significant digits.
    auto num = [](double v) { return std::isfinite(v) ? format_number(v) : std::string("null"); };
    std::ostringstream os;
    os << "{\"check_id\":" << nlohmann::json(r.check_id).dump() << ",\"status\":\"" << to_string(r.status)
       << "\",\"measured\":" << num(r.measured) << ",\"expected\":" << num(r.expected)
       << ",\"tolerance\":" << num(r.tolerance) << ",\"floor\":" << num(r.floor) << ",\"runtime\":" << num(r.runtime)
       << ",\"detail\":" << nlohmann::json(r.detail).dump() << "}";
    return os.str();
}

CheckResult check_result_from_jsonl(const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line);
    auto num = [&](const char* k) {
        const auto& v = j.at(k);
        return v.is_null() ? std::nan("") : v.get<double>();
    };
    CheckResult r;
    r.check_id = j.at("check_id").get<std::string>();
    r.status = check_status_from_string(j.at("status").get<std::string>());
    r.measured = num("measured");
    r.expected = num("expected");
    r.tolerance = num("tolerance");
    r.floor = num("floor");
    r.runtime = num("runtime");
    r.detail = j.value("detail", "");
    return r;
}

bool any_failed(const std::vector<CheckResult>& results) {
    return std::any_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == CheckStatus::Fail; });
}

}  // namespace cpforce
