#pragma once

#include <array>
#include <cmath>

#include "cpforce/quadrature.hpp"

namespace cpforce {

enum class Polarization { Parallel, Perpendicular };

inline constexpr std::array<Polarization, 2> kPolarizations{Polarization::Parallel,
                                                             Polarization::Perpendicular};

// W_par = 2, W_perp = 1
inline constexpr double weight(Polarization s) { return s == Polarization::Parallel ? 2.0 : 1.0; }

const char* to_string(Polarization s);

namespace kern {

// Real-dielectric kernels, written in cancellation-free form. R may be a
// multiprecision type; the double overloads below add domain checks.
template <class R>
R T(Polarization s, R t, R eps) {
    using std::sqrt;
    const R em1 = eps - 1;
    if (em1 == 0) return R(0);
    const R r = sqrt(em1 + t * t);
    const R tr = t + r;
    const R er = eps * t + r;
    // (eps t - r)/(eps t + r) = (eps-1)((eps+1)t^2-1)/(eps t + r)^2
    const R p_ratio = em1 * ((eps + 1) * t * t - 1) / (er * er);
    if (s == Polarization::Parallel) return (-em1 / (tr * tr) - t * t * p_ratio) / 4;
    return (1 - t * t) * p_ratio / 2;
}

template <class R>
R A(Polarization s, R t, R eps) {
    using std::sqrt;
    const R em1 = eps - 1;
    if (em1 == 0) return R(0);
    const R t2 = t * t;
    const R D = (eps * eps - 1) * t2 + 1;
    const R root = t * sqrt((1 - t) * (1 + t));
    if (s == Polarization::Parallel) return sqrt(em1) / 2 * ((2 * eps + 1) * em1 * t2 + 1) / D * root;
    return eps * sqrt(em1) * (em1 * t2 + 1) / D * root;
}

// (A(t) - A'(0) t) / t^3 without the small-t cancellation.
template <class R>
R A_reduced(Polarization s, R t, R eps) {
    using std::sqrt;
    const R em1 = eps - 1;
    if (em1 == 0) return R(0);
    const R t2 = t * t;
    const R D = (eps * eps - 1) * t2 + 1;
    const R w = sqrt((1 - t) * (1 + t));
    const R tail = 1 / (1 + w);
    if (s == Polarization::Parallel) {
        const R d1 = sqrt(em1) / 2;
        return d1 * (eps * em1 * w / D - tail);
    }
    const R d1 = eps * sqrt(em1);
    return d1 * (-eps * em1 * w / D - tail);
}

// Perfect-conductor kernels: the eps -> infinity limit taken inside T and A.
template <class R>
R T_conductor(Polarization s, R t) {
    if (s == Polarization::Parallel) return -(1 + t * t) / 4;
    return (1 - t * t) / 2;
}

// Endpoint values and derivatives, frozen from symbolic differentiation.
template <class R>
struct Endpoints {
    R T0, dT0, d2T0, d3T0;
    R T1, dT1, d2T1, d3T1;
    R A0, dA0, d3A0;
};

template <class R>
Endpoints<R> endpoints(Polarization s, R eps) {
    using std::sqrt;
    const R em1 = eps - 1;
    const R q = sqrt(em1);
    const R q3 = q * q * q;
    const R rs = sqrt(eps);
    Endpoints<R> e{};
    e.A0 = 0;
    if (s == Polarization::Parallel) {
        e.T0 = R(-1) / 4;
        e.dT0 = 1 / (2 * q);
        e.d2T0 = (eps - 3) / (2 * em1);
        e.d3T0 = R(3) / 2 * (2 * eps * (1 - eps) + 1) / q3;
        e.T1 = (1 - rs) / (2 * (1 + rs));
        e.dT1 = e.T1;
        e.d2T1 = (-eps * eps - eps * rs - 2 * eps + 6 * rs - 2) / (2 * rs * rs * rs * (rs + 1));
        e.d3T1 = 6 * (2 * eps - 3 * rs + 1) / (rs * rs * rs * rs * rs * (rs + 1));
        e.dA0 = q / 2;
        e.d3A0 = 6 * e.dA0 * (eps * em1 - R(1) / 2);
    } else {
        e.T0 = R(-1) / 2;
        e.dT0 = eps / q;
        e.d2T0 = (-2 * eps * eps + eps - 1) / em1;
        e.d3T0 = eps * (6 * eps * eps - 6 * eps + 3) / q3;
        e.T1 = 0;
        e.dT1 = (1 - rs) / (1 + rs);
        e.d2T1 = (-eps - 3 * rs + 4) / (rs * (rs + 1));
        e.d3T1 = 6 * (eps * rs - 3 * eps + 5 * rs - 3) / (rs * rs * rs * (rs + 1));
        e.dA0 = eps * q;
        e.d3A0 = 6 * e.dA0 * (-eps * em1 - R(1) / 2);
    }
    return e;
}

template <class R>
Endpoints<R> endpoints_conductor(Polarization s) {
    Endpoints<R> e{};
    if (s == Polarization::Parallel) {
        e.T0 = R(-1) / 4;
        e.d2T0 = R(-1) / 2;
        e.T1 = e.dT1 = e.d2T1 = R(-1) / 2;
    } else {
        e.T0 = R(1) / 2;
        e.d2T0 = -1;
        e.T1 = 0;
        e.dT1 = e.d2T1 = -1;
    }
    return e;
}

}  // namespace kern

double kernel_T(Polarization s, double t, double eps);
double kernel_A(Polarization s, double t, double eps);

struct KernelEndpointData {
    double T0 = 0, T1 = 0, dT0 = 0, dT1 = 0, d2T0 = 0, d2T1 = 0, d3T0 = 0, d3T1 = 0;
    double A0 = 0, dA0 = 0, d3A0 = 0;
    double rel_err = 0.0;     // analytic expressions: rounding only
    bool degenerate = false;  // eps = 1: every kernel vanishes
};

KernelEndpointData kernel_endpoints(Polarization s, double eps);
KernelEndpointData conductor_endpoints(Polarization s);

// f_sigma with x = 2 z omega / c:
// int_0^1 [A(t) exp(-x sqrt(eps-1) t) + T(t) cos(x t)] dt
quad::QuadResult f_sigma(Polarization s, double x, double eps, double tol = 1e-10);
// SI form; z in metres, omega in rad/s.
quad::QuadResult f_sigma_si(Polarization s, double z, double omega, double eps, double tol = 1e-10);

// Kernels for one medium: real eps >= 1 or the perfect conductor.
struct KernelSet {
    bool conductor = false;
    double eps = 1.0;

    static KernelSet dielectric(double eps);
    static KernelSet perfect_conductor();

    double T(Polarization s, double t) const;
    double A(Polarization s, double t) const;
    double Ttot(double t) const;  // 2 T_par + T_perp
    double Atot(double t) const;  // 2 A_par + A_perp
    KernelEndpointData endpoints(Polarization s) const;
    bool vanishing() const { return !conductor && eps == 1.0; }
    double sqrt_em1() const { return conductor ? 0.0 : std::sqrt(eps - 1.0); }
};

// Integral over t in [0,1] of h(t), split at t = 1/2 with t = 1 - w^2 on the
// upper half to absorb the sqrt(1-t^2) endpoint of the A kernels.
quad::QuadResult integrate_unit(const quad::Integrand& h, const quad::Options& opts);

// Reduced frequency moments of f_sigma from the endpoint expansions:
// zbar^3 int u^2 f_sigma du and zbar^2 int u f_sigma du (u = omega/omega0).
quad::QuadResult moment2_reduced(Polarization s, const KernelSet& k, double tol = 1e-12);
quad::QuadResult moment1_reduced(Polarization s, const KernelSet& k, double tol = 1e-12);

// g_sigma(eps) assembled by quadrature of its defining integral, with the
// small-t cancellation handled in 50-digit arithmetic.
quad::QuadResult g_sigma_numeric(Polarization s, double eps, double tol = 1e-12);
quad::QuadResult g_sigma_conductor_numeric(Polarization s, double tol = 1e-12);

}  // namespace cpforce
