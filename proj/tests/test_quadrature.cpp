#include <doctest.h>

#include <cmath>

#include "cpforce/asymptotics.hpp"
#include "cpforce/quadrature.hpp"

using namespace cpforce;

TEST_SUITE("quadrature") {
    TEST_CASE("Bose moments") {
        const quad::QuadResult r3 = quad::integrate_bose([](double u) { return u * u * u; }, 1.0, 1e-12);
        CHECK(r3.value == doctest::Approx(std::pow(M_PI, 4) / 15.0).epsilon(1e-12));
        const quad::QuadResult r4 = quad::integrate_bose([](double u) { return std::pow(u, 4); }, 1.0, 1e-12);
        // 24 * zeta(5) from the series 24 * sum 1/n^5.
        double series = 0.0;
        for (int n = 1; n < 200000; ++n) series += 24.0 / std::pow(n, 5);
        CHECK(r4.value == doctest::Approx(series).epsilon(1e-12));
        CHECK(quad::integrate_bose([](double u) { return u; }, kInf, 1e-10).value == 0.0);
    }

    TEST_CASE("Bose scaling in B") {
        auto g = [](double u) { return u * u * u; };
        const double b1 = quad::integrate_bose(g, 1.0, 1e-12).value;
        const double b3 = quad::integrate_bose(g, 3.0, 1e-12).value;
        CHECK(b3 == doctest::Approx(b1 / 81.0).epsilon(1e-11));
    }

    TEST_CASE("principal value of a simple pole") {
        const auto r = quad::integrate_pv([](double x) { return 1.0 / (x - 1.0); }, 0.0, 3.0, 1.0, 1e-12);
        CHECK(r.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        // Asymmetric window with a smooth numerator.
        const auto s = quad::integrate_pv([](double x) { return x * x / (x - 1.0); }, 0.5, 4.0, 1.0, 1e-12);
        const double exact = (16.0 - 0.25) / 2.0 + 3.5 + std::log(3.0 / 0.5);
        CHECK(s.value == doctest::Approx(exact).epsilon(1e-11));
    }

    TEST_CASE("oscillatory tails") {
        quad::Options o;
        o.rel_tol = 1e-11;
        const auto c = quad::integrate_fourier([](double x) { return std::exp(-0.1 * x); }, 0.0, 500.0, 7.0,
                                               quad::Trig::Cos, o);
        CHECK(c.value == doctest::Approx(0.1 / (0.01 + 49.0)).epsilon(1e-9));
        const auto s = quad::integrate_fourier([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 2000.0, 3.0,
                                               quad::Trig::Cos, o);
        // int_0^inf cos(3x)/(1+x^2) = pi e^-3 / 2, tail beyond 2000 is below 1e-7.
        CHECK(s.value == doctest::Approx(M_PI * std::exp(-3.0) / 2.0).epsilon(1e-5));
    }

    TEST_CASE("reported errors cover the true error") {
        const auto r = quad::integrate_adaptive([](double x) { return std::log(x) * std::sqrt(x); }, 0.0, 1.0, 1e-10);
        CHECK(std::abs(r.value + 4.0 / 9.0) <= 3.0 * r.abs_err + 1e-15);
        CHECK(r.converged);
    }

    TEST_CASE("Neville extrapolation is exact on polynomials") {
        const std::vector<double> x{0.4, 0.2, 0.1, 0.05};
        std::vector<double> y;
        for (double v : x) y.push_back(2.0 - 3.0 * v + 0.5 * v * v);
        CHECK(quad::neville_at_zero(x, y).first == doctest::Approx(2.0).epsilon(1e-13));
    }

    TEST_CASE("regulated limit of an undamped oscillatory integral") {
        // int_0^inf sin(x) e^{-d x} dx = 1/(1+d^2) -> 1.
        const auto sched = quad::RegulatorSchedule::geometric(0.2, 0.5, 5, 3);
        const auto r = quad::integrate_regulated([](double x) { return std::sin(x); }, sched, 1.0, 1e-12);
        CHECK_FALSE(r.inconclusive);
        CHECK(r.result.value == doctest::Approx(1.0).epsilon(1e-4));
    }
}
