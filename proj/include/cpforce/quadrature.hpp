#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cpforce::quad {

using Integrand = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double abs_err = 0.0;
    std::size_t evals = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o);
};

QuadResult operator+(QuadResult a, const QuadResult& b);
QuadResult scaled(QuadResult r, double factor);

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_intervals = 4000;
    // Interior points where the integrand changes scale; out-of-range entries are ignored.
    std::vector<double> breakpoints;
};

// Global adaptive Gauss-Kronrod (10/21) quadrature. Stops when the summed
// error estimate drops below max(abs_tol, rel_tol*|value|) or when the
// remaining error is at the roundoff level of the integrand.
QuadResult integrate_adaptive(const Integrand& f, double a, double b, const Options& opts);
QuadResult integrate_adaptive(const Integrand& f, double a, double b, double tol);

// Principal value of the integral of f over [a,b], where f has a simple pole at p.
// The symmetric neighbourhood [p-r, p+r] is folded onto [0, r], which removes
// the pole exactly; radius <= 0 picks the largest symmetric window.
struct PvOptions {
    Options quad;
    double radius = 0.0;
};
QuadResult integrate_pv(const Integrand& f, double a, double b, double p, const PvOptions& opts);
QuadResult integrate_pv(const Integrand& f, double a, double b, double p, double tol);

// Truncation point of a Bose-weighted integral in units of y = B*u.
double bose_y_max(double tol);

// Integral over [0, inf) of g(u) / (exp(B u) - 1), truncated at y_max / B.
// B = inf returns exactly 0.
QuadResult integrate_bose(const Integrand& g, double B, double tol);

enum class Trig { Cos, Sin };

// Integral over [a,b] of f(x)*cos(omega x) or f(x)*sin(omega x). Long ranges
// use the Chebyshev-moment rule from GSL (QAWO) on geometric segments.
QuadResult integrate_fourier(const Integrand& f, double a, double b, double omega, Trig kind,
                             const Options& opts);

// Sum of per-panel adaptive results with panels of the given width.
QuadResult integrate_panels(const Integrand& f, double a, double b, double width, const Options& opts);

struct RegulatorSchedule {
    std::vector<double> deltas;  // strictly decreasing, positive
    int order = 2;               // degree of the polynomial fit in delta

    static RegulatorSchedule geometric(double delta0, double ratio, int count, int order);
    void validate() const;
};

struct RegulatedResult {
    QuadResult result;
    bool inconclusive = false;
    std::vector<double> samples;  // damped values at each delta
};

// Extrapolates delta -> 0 of a damped family I(delta). Oracle use only.
RegulatedResult integrate_regulated(const std::function<QuadResult(double)>& damped,
                                    const RegulatorSchedule& schedule);

// Same, for the integral over [0, inf) of f(x) exp(-delta x). The damped
// integrals are truncated where exp(-delta x) < 1e-18.
RegulatedResult integrate_regulated(const Integrand& f_osc, const RegulatorSchedule& schedule,
                                    double oscillation_scale, double tol);

// Polynomial extrapolation to x = 0 through (x_i, y_i) using Neville's scheme.
// Returns the estimate and the difference between the two highest orders.
std::pair<double, double> neville_at_zero(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cpforce::quad
