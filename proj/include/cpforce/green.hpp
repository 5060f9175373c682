#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "cpforce/quadrature.hpp"

namespace cpforce {

using cplx = std::complex<double>;

struct WaveNumbers {
    cplx q1;     // (omega/c) sqrt(eps)
    double q2;   // omega/c
    cplx beta1;  // substrate normal wave number
    cplx beta2;  // vacuum normal wave number
};

// beta_alpha = sqrt(q_alpha^2 - k_par^2) on the branch Re >= 0, Im >= 0.
WaveNumbers wave_numbers(double omega, double k_par, cplx eps);

struct FresnelSet {
    cplx rp, rs, tp, ts;
};

// Throws SingularityError when eps*beta2 + beta1 or beta2 + beta1 vanishes.
FresnelSet fresnel(cplx eps, cplx beta1, cplx beta2);

class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

struct GreenOptions {
    double tol = 1e-10;
    // Use the general complex-eps integrands even when eps is real.
    bool force_general = false;
};

// Kernel values divided by omega/c, as functions of x = 2 omega z / c.
quad::QuadResult g11_reduced(double x, cplx eps, const GreenOptions& opts = {});
quad::QuadResult g12_reduced(double x, cplx eps, const GreenOptions& opts = {});
quad::QuadResult g21_reduced(cplx eps, const GreenOptions& opts = {});
double conductor_f_reduced(double x);

// SI kernels in 1/m; z in metres, omega in rad/s. Non-convergence throws
// QuadratureError carrying the achieved error.
double g11(double z, double omega, cplx eps, const GreenOptions& opts = {});
double g12(double z, double omega, cplx eps, const GreenOptions& opts = {});
double g21(double omega, cplx eps, const GreenOptions& opts = {});
double conductor_f(double z, double omega);

}  // namespace cpforce
