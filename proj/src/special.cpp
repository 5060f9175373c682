#include "cpforce/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <gsl/gsl_sf_expint.h>

namespace cpforce::special {

namespace {

constexpr double kSeriesFrom = 35.0;

// Sum of sign^k * c_k / x^(2k) style asymptotic series, truncated at the
// smallest term.
template <class Term>
double asymptotic_sum(Term term) {
    double sum = 0.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 60; ++k) {
        const double t = term(k);
        if (std::abs(t) >= last) break;
        sum += t;
        if (std::abs(t) < 1e-18 * std::abs(sum)) break;
        last = std::abs(t);
    }
    return sum;
}

void check_positive(double x, const char* what) {
    if (!(x > 0.0)) throw std::domain_error(std::string(what) + ": argument must be positive");
}

void check_state(int s) {
    if (s != 1 && s != -1) throw std::invalid_argument("state sign must be +1 or -1");
}

}  // namespace

double aux_f(double x) {
    check_positive(x, "aux_f");
    if (x > kSeriesFrom) {
        const double x2 = x * x;
        // (2k)!/x^(2k) with alternating sign
        double c = 1.0;
        return asymptotic_sum([&](int k) {
                   if (k > 0) c *= -(2.0 * k - 1.0) * (2.0 * k) / x2;
                   return c;
               }) / x;
    }
    const double si = gsl_sf_Si(x) - M_PI_2;
    return gsl_sf_Ci(x) * std::sin(x) - si * std::cos(x);
}

double aux_g(double x) {
    check_positive(x, "aux_g");
    if (x > kSeriesFrom) {
        const double x2 = x * x;
        double c = 1.0;
        return asymptotic_sum([&](int k) {
                   if (k > 0) c *= -(2.0 * k) * (2.0 * k + 1.0) / x2;
                   return c;
               }) / x2;
    }
    const double si = gsl_sf_Si(x) - M_PI_2;
    return -gsl_sf_Ci(x) * std::cos(x) - si * std::sin(x);
}

double j_cos(int s, double q) {
    check_state(s);
    return s < 0 ? aux_g(q) : aux_g(q) - M_PI * std::sin(q);
}

double j_sin(int s, double q) {
    check_state(s);
    return s < 0 ? aux_f(q) : -aux_f(q) + M_PI * std::cos(q);
}

double j_exp(int s, double p) {
    check_state(s);
    check_positive(p, "j_exp");
    return s < 0 ? gsl_sf_expint_E1_scaled(p) : -gsl_sf_expint_Ei_scaled(p);
}

double k_exp(int s, double p) {
    check_state(s);
    check_positive(p, "k_exp");
    if (p > kSeriesFrom) {
        // -sum_{k>=1} s^k k!/p^(k+1)
        double c = 1.0 / p;
        return -asymptotic_sum([&](int k) {
            c *= s * (k + 1.0) / p;
            return c;
        });
    }
    return 1.0 / p + s * j_exp(s, p);
}

double p_dk_exp(int s, double p) {
    check_state(s);
    check_positive(p, "p_dk_exp");
    if (p > kSeriesFrom) {
        // sum_{k>=1} s^k k! (k+1)/p^(k+1)
        double c = 1.0 / p;
        return asymptotic_sum([&](int k) {
            c *= s * (k + 1.0) / p;
            return c * (k + 2.0);
        });
    }
    return -1.0 / p - s - p * j_exp(s, p);
}

double smooth_cos(int s, double q) {
    check_state(s);
    return s * aux_g(q);
}

double smooth_dcos(int s, double q) {
    check_state(s);
    double one_minus_qf;
    if (q > kSeriesFrom) {
        // 1 - q f(q) = -sum_{k>=1} (-1)^k (2k)!/q^(2k)
        const double q2 = q * q;
        double c = 1.0;
        one_minus_qf = -asymptotic_sum([&](int k) {
            c *= -(2.0 * k + 1.0) * (2.0 * k + 2.0) / q2;
            return c;
        });
    } else {
        one_minus_qf = 1.0 - q * aux_f(q);
    }
    return -s * one_minus_qf;
}

}  // namespace cpforce::special
