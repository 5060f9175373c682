#include "cpforce/green.hpp"

#include <cmath>

#include "cpforce/core.hpp"
#include "cpforce/kernels.hpp"

namespace cpforce {

namespace {

// Principal square root with a +0 imaginary part forced on real arguments,
// so negative reals land on +i.
cplx branch_sqrt(cplx z) {
    if (z.imag() == 0.0) z = cplx(z.real(), 0.0);
    cplx r = std::sqrt(z);
    if (r.imag() < 0.0) r = -r;
    return r;
}

void check_eps(cplx eps) {
    if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag())) throw DomainError("permittivity must be finite");
    if (eps.imag() < 0.0) throw DomainError("permittivity requires eps_i >= 0");
}

bool real_path(cplx eps, const GreenOptions& o) {
    return !o.force_general && eps.imag() == 0.0 && eps.real() >= 1.0;
}

quad::QuadResult checked(quad::QuadResult r, const char* what) {
    if (!r.converged) throw QuadratureError(std::string(what) + ": quadrature did not converge", r.abs_err);
    return r;
}

}  // namespace

WaveNumbers wave_numbers(double omega, double k_par, cplx eps) {
    if (!(omega > 0.0)) throw DomainError("wave_numbers: omega must be positive");
    if (!(k_par >= 0.0)) throw DomainError("wave_numbers: k_par must be non-negative");
    check_eps(eps);
    WaveNumbers w;
    w.q2 = omega / phys::c;
    w.q1 = w.q2 * branch_sqrt(eps);
    w.beta1 = branch_sqrt(w.q1 * w.q1 - k_par * k_par);
    w.beta2 = branch_sqrt(cplx(w.q2 * w.q2 - k_par * k_par, 0.0));
    return w;
}

FresnelSet fresnel(cplx eps, cplx beta1, cplx beta2) {
    const cplx dp = eps * beta2 + beta1;
    const cplx ds = beta2 + beta1;
    if (std::abs(dp) == 0.0) throw SingularityError("fresnel: eps*beta2 + beta1 = 0");
    if (std::abs(ds) == 0.0) throw SingularityError("fresnel: beta2 + beta1 = 0");
    FresnelSet f;
    f.rp = (eps * beta2 - beta1) / dp;
    f.rs = (beta2 - beta1) / ds;
    f.tp = 2.0 * branch_sqrt(eps) * beta2 / dp;
    f.ts = 2.0 * beta2 / ds;
    return f;
}

quad::QuadResult g11_reduced(double x, cplx eps, const GreenOptions& opts) {
    if (!(x >= 0.0)) throw DomainError("g11: 2 omega z / c must be non-negative");
    check_eps(eps);
    quad::Options o;
    o.rel_tol = opts.tol;
    o.abs_tol = opts.tol * 1e-4 / (1.0 + x);
    if (x > 0.0) {
        const double period = 2.0 * M_PI / x;
        for (double t = period; t < 1.0 && o.breakpoints.size() < 400; t += period) o.breakpoints.push_back(t);
    }
    if (real_path(eps, opts)) {
        const KernelSet k = KernelSet::dielectric(eps.real());
        if (k.vanishing()) return {};
        quad::Integrand h = [&](double t) { return k.Ttot(t) * std::cos(x * t); };
        return quad::scaled(integrate_unit(h, o), 1.0 / (2.0 * M_PI));
    }
    const double epsR = eps.real();
    const double abs_eps2 = std::norm(eps);
    quad::Integrand cos_part = [&](double t) {
        const double t2 = t * t;
        const cplx root = branch_sqrt(eps - 1.0 + t2);
        const double m = std::abs(eps - 1.0 + t2);
        const double a = std::norm(t + root);
        const double b = std::norm(eps * t + root);
        return ((t2 - m) / a + (abs_eps2 * t2 - m) * (1.0 - 2.0 * t2) / b) * std::cos(x * t);
    };
    quad::Integrand sin_part = [&](double t) {
        const double t2 = t * t;
        const cplx root = branch_sqrt(eps - 1.0 + t2);
        const double m = std::abs(eps - 1.0 + t2);
        const double lift = std::max(0.0, m - (epsR - 1.0 + t2));
        const double a = std::norm(t + root);
        const double b = std::norm(eps * t + root);
        return t * std::sqrt(lift) * (1.0 / a - (m + t2 - 1.0) * (1.0 - 2.0 * t2) / b) * std::sin(x * t);
    };
    quad::QuadResult c = integrate_unit(cos_part, o);
    quad::QuadResult s = integrate_unit(sin_part, o);
    return quad::scaled(c, 1.0 / (4.0 * M_PI)) + quad::scaled(s, 1.0 / (2.0 * std::sqrt(2.0) * M_PI));
}

quad::QuadResult g12_reduced(double x, cplx eps, const GreenOptions& opts) {
    if (!(x > 0.0)) throw DomainError("g12: 2 omega z / c must be positive");
    check_eps(eps);
    quad::Options o;
    o.rel_tol = opts.tol;
    o.abs_tol = opts.tol * 1e-4;
    if (real_path(eps, opts)) {
        const KernelSet k = KernelSet::dielectric(eps.real());
        if (k.vanishing()) return {};
        const double kappa = x * k.sqrt_em1();
        quad::Integrand h = [&](double t) { return k.Atot(t) * std::exp(-kappa * t); };
        if (kappa > 1.0) o.breakpoints = {1.0 / kappa, 5.0 / kappa, 20.0 / kappa};
        return quad::scaled(integrate_unit(h, o), 1.0 / (2.0 * M_PI));
    }
    const double epsR = eps.real();
    quad::Integrand h = [&](double t) {
        const double t2 = t * t;
        const cplx w = eps - 1.0 - t2;
        const double lift = std::max(0.0, std::abs(w) + (epsR - 1.0 - t2));
        if (lift == 0.0) return 0.0;
        const cplx root = branch_sqrt(w);
        const cplx i(0.0, 1.0);
        const double a = std::norm(i * t * eps + root);
        const double b = std::norm(i * t + root);
        return t * std::exp(-x * t) * std::sqrt(lift) *
               ((t2 + 1.0 + std::abs(w)) * (2.0 * t2 + 1.0) / a + 1.0 / b);
    };
    const double tmax = 42.0 / x;
    const double edge = std::sqrt(std::max(epsR - 1.0, 0.0));
    if (edge > 0.0 && edge < tmax) o.breakpoints.push_back(edge);
    for (double b = 1.0 / x; b < tmax; b *= 4.0) o.breakpoints.push_back(b);
    const quad::QuadResult r = quad::integrate_adaptive(h, 0.0, tmax, o);
    return quad::scaled(r, 1.0 / (2.0 * std::sqrt(2.0) * M_PI));
}

quad::QuadResult g21_reduced(cplx eps, const GreenOptions& opts) {
    check_eps(eps);
    const double epsR = eps.real();
    quad::Integrand h = [&](double t) {
        const cplx w = eps - t;
        const double lift = std::max(0.0, std::abs(w) + (epsR - t));
        const cplx rw = branch_sqrt(w);
        const double s1 = std::sqrt((1.0 - t));
        const double a = std::norm(eps * s1 + rw);
        const double b = std::norm(s1 + rw);
        return std::sqrt(lift) * ((t + std::abs(w)) / a + 1.0 / b);
    };
    quad::Options o;
    o.rel_tol = opts.tol;
    o.abs_tol = opts.tol * 1e-4;
    return quad::scaled(integrate_unit(h, o), 1.0 / (4.0 * std::sqrt(2.0) * M_PI));
}

double conductor_f_reduced(double x) {
    if (!(x > 0.0)) throw DomainError("conductor_f: 2 omega z / c must be positive");
    double bracket;
    if (x < 0.1) {
        const double x2 = x * x;
        bracket = -1.0 / 6.0 + x2 * (1.0 / 20.0 + x2 * (-1.0 / 336.0 + x2 / 12960.0));
    } else {
        const double s = std::sin(x), c = std::cos(x);
        bracket = -c / (x * x) - s / (2.0 * x) + s / (x * x * x);
    }
    return bracket / M_PI;
}

double g11(double z, double omega, cplx eps, const GreenOptions& opts) {
    if (!(z > 0.0) || !(omega > 0.0)) throw DomainError("g11: z and omega must be positive");
    const double k0 = omega / phys::c;
    return k0 * checked(g11_reduced(2.0 * k0 * z, eps, opts), "g11").value;
}

double g12(double z, double omega, cplx eps, const GreenOptions& opts) {
    if (!(z > 0.0) || !(omega > 0.0)) throw DomainError("g12: z and omega must be positive");
    const double k0 = omega / phys::c;
    return k0 * checked(g12_reduced(2.0 * k0 * z, eps, opts), "g12").value;
}

double g21(double omega, cplx eps, const GreenOptions& opts) {
    if (!(omega > 0.0)) throw DomainError("g21: omega must be positive");
    return omega / phys::c * checked(g21_reduced(eps, opts), "g21").value;
}

double conductor_f(double z, double omega) {
    if (!(z > 0.0) || !(omega > 0.0)) throw DomainError("conductor_f: z and omega must be positive");
    const double k0 = omega / phys::c;
    return k0 * conductor_f_reduced(2.0 * k0 * z);
}

}  // namespace cpforce
