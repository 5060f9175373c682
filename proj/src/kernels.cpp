#include "cpforce/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cpforce/core.hpp"

namespace cpforce {

const char* to_string(Polarization s) { return s == Polarization::Parallel ? "parallel" : "perpendicular"; }

namespace {

void check_args(double t, double eps) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("kernel argument t must lie in [0,1]");
    if (!(eps >= 1.0) || !std::isfinite(eps)) throw DomainError("kernel permittivity must be real and >= 1");
}

KernelEndpointData to_data(const kern::Endpoints<double>& e) {
    KernelEndpointData d;
    d.T0 = e.T0;
    d.dT0 = e.dT0;
    d.d2T0 = e.d2T0;
    d.d3T0 = e.d3T0;
    d.T1 = e.T1;
    d.dT1 = e.dT1;
    d.d2T1 = e.d2T1;
    d.d3T1 = e.d3T1;
    d.A0 = e.A0;
    d.dA0 = e.dA0;
    d.d3A0 = e.d3A0;
    d.rel_err = 64.0 * std::numeric_limits<double>::epsilon();
    return d;
}

}  // namespace

double kernel_T(Polarization s, double t, double eps) {
    check_args(t, eps);
    return kern::T(s, t, eps);
}

double kernel_A(Polarization s, double t, double eps) {
    check_args(t, eps);
    return kern::A(s, t, eps);
}

KernelEndpointData kernel_endpoints(Polarization s, double eps) {
    if (!(eps >= 1.0) || !std::isfinite(eps)) throw DomainError("kernel permittivity must be real and >= 1");
    if (eps == 1.0) {
        KernelEndpointData d;
        d.degenerate = true;
        return d;
    }
    return to_data(kern::endpoints(s, eps));
}

KernelEndpointData conductor_endpoints(Polarization s) { return to_data(kern::endpoints_conductor<double>(s)); }

quad::QuadResult integrate_unit(const quad::Integrand& h, const quad::Options& opts) {
    quad::Options lo = opts;
    lo.breakpoints.clear();
    for (double b : opts.breakpoints)
        if (b > 0.0 && b < 0.5) lo.breakpoints.push_back(b);
    quad::QuadResult out = quad::integrate_adaptive(h, 0.0, 0.5, lo);
    quad::Options hi = opts;
    hi.breakpoints.clear();
    for (double b : opts.breakpoints)
        if (b > 0.5 && b < 1.0) hi.breakpoints.push_back(std::sqrt(1.0 - b));
    // t = 1 - w^2, dt = 2 w dw, w in [0, 1/sqrt 2]
    quad::Integrand g = [&](double w) { return 2.0 * w * h(1.0 - w * w); };
    out += quad::integrate_adaptive(g, 0.0, std::sqrt(0.5), hi);
    return out;
}

quad::QuadResult f_sigma(Polarization s, double x, double eps, double tol) {
    if (!(x >= 0.0)) throw DomainError("f_sigma: 2 z omega / c must be non-negative");
    if (!(eps >= 1.0)) throw DomainError("f_sigma: eps must be >= 1");
    if (eps == 1.0) return {};
    const double k = x * std::sqrt(eps - 1.0);
    quad::Integrand h = [&](double t) {
        return kern::A(s, t, eps) * std::exp(-k * t) + kern::T(s, t, eps) * std::cos(x * t);
    };
    quad::Options o;
    o.rel_tol = tol;
    o.abs_tol = tol * 1e-3;
    if (x > 0.0) {
        const double period = 2.0 * M_PI / x;
        for (double t = period; t < 1.0 && o.breakpoints.size() < 200; t += period) o.breakpoints.push_back(t);
    }
    return integrate_unit(h, o);
}

quad::QuadResult f_sigma_si(Polarization s, double z, double omega, double eps, double tol) {
    if (!(z > 0.0)) throw DomainError("f_sigma: z must be positive");
    return f_sigma(s, 2.0 * omega * z / phys::c, eps, tol);
}

KernelSet KernelSet::dielectric(double eps) {
    if (!(eps >= 1.0) || !std::isfinite(eps)) throw DomainError("dielectric kernels need finite real eps >= 1");
    return {false, eps};
}

KernelSet KernelSet::perfect_conductor() { return {true, kInf}; }

double KernelSet::T(Polarization s, double t) const {
    return conductor ? kern::T_conductor(s, t) : kern::T(s, t, eps);
}

double KernelSet::A(Polarization s, double t) const { return conductor ? 0.0 : kern::A(s, t, eps); }

double KernelSet::Ttot(double t) const {
    if (conductor) return -t * t;
    if (eps == 1.0) return 0.0;
    const double em1 = eps - 1.0;
    const double r = std::sqrt(em1 + t * t);
    const double tr = t + r;
    const double er = eps * t + r;
    return 0.5 * (-em1 / (tr * tr) + (1.0 - 2.0 * t * t) * em1 * ((eps + 1.0) * t * t - 1.0) / (er * er));
}

double KernelSet::Atot(double t) const {
    if (conductor || eps == 1.0) return 0.0;
    const double t2 = t * t;
    const double D = (eps * eps - 1.0) * t2 + 1.0;
    return std::sqrt(eps - 1.0) * t * std::sqrt((1.0 - t) * (1.0 + t)) *
           ((3.0 * eps * eps - 2.0 * eps - 1.0) * t2 + (eps + 1.0)) / D;
}

KernelEndpointData KernelSet::endpoints(Polarization s) const {
    return conductor ? conductor_endpoints(s) : kernel_endpoints(s, eps);
}

quad::QuadResult moment2_reduced(Polarization s, const KernelSet& k, double tol) {
    const KernelEndpointData e = k.endpoints(s);
    if (k.conductor) return {-M_PI / 16.0 * e.d2T0, 0.0, 0, true};
    if (e.degenerate) return {};
    quad::Integrand h = [&](double t) { return kern::A_reduced(s, t, k.eps); };
    quad::Options o;
    o.rel_tol = tol;
    quad::QuadResult r = integrate_unit(h, o);
    const double em1 = k.eps - 1.0;
    const double c = 2.0 / (em1 * std::sqrt(em1));
    return {-0.125 * (M_PI / 2.0 * e.d2T0 + c * (e.dA0 - r.value)), 0.125 * c * r.abs_err, r.evals, r.converged};
}

quad::QuadResult moment1_reduced(Polarization s, const KernelSet& k, double tol) {
    const KernelEndpointData e = k.endpoints(s);
    if (!k.conductor && e.degenerate) return {};
    const double em1 = k.conductor ? 0.0 : k.eps - 1.0;
    quad::Integrand h = [&](double t) {
        double num = k.T(s, t) - e.T0;
        if (!k.conductor) num -= k.A(s, t) / em1;
        return num / (t * t);
    };
    quad::Options o;
    o.rel_tol = tol;
    o.abs_tol = tol * 1e-3;
    quad::QuadResult r = integrate_unit(h, o);
    double v = e.T0 - r.value;
    if (!k.conductor) v += e.dA0 / em1 * 0.5 * std::log(em1);
    return {0.25 * v, 0.25 * r.abs_err, r.evals, r.converged};
}

namespace {

using mp = boost::multiprecision::cpp_bin_float_50;

template <class Tfun, class Afun>
quad::QuadResult g_sigma_assemble(const kern::Endpoints<mp>& e, const mp& em1sq, double log_term_coef,
                                  Tfun T, Afun A, double tol) {
    // The t^0..t^3 terms cancel in the numerator, so it is evaluated in
    // 50-digit arithmetic and only the O(1) quotient is rounded to double.
    quad::Integrand h = [&](double td) {
        const mp t = td;
        mp num = T(t) - e.T0 - e.dT0 * t - e.d2T0 / 2 * t * t;
        if (em1sq != 0) num += (A(t) - e.dA0 * t) / em1sq;
        const mp t2 = t * t;
        return static_cast<double>(num / (t2 * t2));
    };
    quad::Options o;
    o.rel_tol = tol;
    o.abs_tol = tol * 1e-3;
    quad::QuadResult r = integrate_unit(h, o);
    double head = static_cast<double>(2 * e.T0 + 3 * e.dT0 + 3 * e.d2T0);
    if (em1sq != 0) head += static_cast<double>((3 * e.dA0 - e.d3A0 * log_term_coef) / em1sq);
    return {head - 6.0 * r.value, 6.0 * r.abs_err, r.evals, r.converged};
}

}  // namespace

quad::QuadResult g_sigma_numeric(Polarization s, double eps, double tol) {
    if (!(eps > 1.0) || !std::isfinite(eps)) throw DomainError("g_sigma: eps must be finite and > 1");
    const mp E = eps;
    const auto e = kern::endpoints<mp>(s, E);
    const mp em1 = E - 1;
    const double log_sqrt = 0.5 * std::log(eps - 1.0);
    return g_sigma_assemble(
        e, em1 * em1, log_sqrt, [&](const mp& t) { return kern::T<mp>(s, t, E); },
        [&](const mp& t) { return kern::A<mp>(s, t, E); }, tol);
}

quad::QuadResult g_sigma_conductor_numeric(Polarization s, double tol) {
    const auto e = kern::endpoints_conductor<mp>(s);
    return g_sigma_assemble(
        e, mp(0), 0.0, [&](const mp& t) { return kern::T_conductor<mp>(s, t); },
        [](const mp&) { return mp(0); }, tol);
}

}  // namespace cpforce
