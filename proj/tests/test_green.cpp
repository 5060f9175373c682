#include <doctest.h>

#include <cmath>

#include "cpforce/core.hpp"
#include "cpforce/green.hpp"

using namespace cpforce;

TEST_SUITE("green") {
    // Frozen 40-digit values of the reduced kernels at eps = 2.
    TEST_CASE("reduced kernels match high-precision values") {
        struct Row {
            double x, g11, g12;
        };
        const Row rows[] = {{1.0, -0.04778243273810855, 0.082004691074924757},
                            {2.0, -0.037061171650009647, 0.049988370393350961},
                            {20.0, -0.0024537576792284724, 0.0011742996133661989}};
        for (const Row& r : rows) {
            CAPTURE(r.x);
            CHECK(g11_reduced(r.x, 2.0).value == doctest::Approx(r.g11).epsilon(1e-9));
            CHECK(g12_reduced(r.x, 2.0).value == doctest::Approx(r.g12).epsilon(1e-9));
        }
    }

    TEST_CASE("general complex path agrees with the real-eps path") {
        GreenOptions gen;
        gen.force_general = true;
        for (double x : {0.5, 3.0}) {
            CAPTURE(x);
            CHECK(g11_reduced(x, 3.0, gen).value == doctest::Approx(g11_reduced(x, 3.0).value).epsilon(1e-8));
            CHECK(g12_reduced(x, 3.0, gen).value == doctest::Approx(g12_reduced(x, 3.0).value).epsilon(1e-8));
        }
    }

    TEST_CASE("no interface, no reflection") {
        CHECK(g11_reduced(1.0, 1.0).value == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(g12_reduced(1.0, 1.0).value == doctest::Approx(0.0).epsilon(1e-14));
    }

    TEST_CASE("the dielectric kernels approach the conductor as eps grows") {
        // The deviation falls like log(eps)/sqrt(eps).
        const double x = 0.6;
        double prev = kInf;
        for (double eps : {1e4, 1e6, 1e8, 1e10}) {
            const double sum = g11_reduced(x, eps).value + g12_reduced(x, eps).value;
            const double rel = std::abs(sum / conductor_f_reduced(x) - 1.0);
            CAPTURE(eps);
            CHECK(rel < prev);
            prev = rel;
        }
        CHECK(prev < 1e-3);
    }

    TEST_CASE("SI wrappers scale by omega/c") {
        const double omega = 2e15, z = 1e-7;
        const double x = 2.0 * omega * z / phys::c;
        CHECK(g11(z, omega, 4.0) == doctest::Approx(omega / phys::c * g11_reduced(x, 4.0).value).epsilon(1e-12));
        CHECK(conductor_f(z, omega) == doctest::Approx(omega / phys::c * conductor_f_reduced(x)).epsilon(1e-12));
    }

    TEST_CASE("Fresnel coefficients at normal incidence") {
        const double eps = 4.0;
        const WaveNumbers w = wave_numbers(1.0, 0.0, eps);
        const FresnelSet f = fresnel(eps, w.beta1, w.beta2);
        CHECK(std::abs(f.rs - cplx((1.0 - 2.0) / (1.0 + 2.0))) < 1e-14);
        CHECK(std::abs(f.ts - cplx(2.0 / 3.0)) < 1e-14);
        CHECK(std::abs(std::abs(f.rp) - 1.0 / 3.0) < 1e-14);
        // Evanescent in vacuum beyond k_par = omega/c.
        const WaveNumbers e = wave_numbers(1.0, 1.5, eps);
        CHECK(e.beta2.real() == doctest::Approx(0.0));
        CHECK(e.beta2.imag() > 0.0);
    }
}
