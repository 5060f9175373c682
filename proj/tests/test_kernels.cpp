#include <doctest.h>

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "cpforce/kernels.hpp"
#include "cpforce/validation.hpp"

using namespace cpforce;

namespace {

double reference(const std::string& key) {
    std::ifstream in(reference_file_path());
    REQUIRE(in);
    return nlohmann::json::parse(in).at("values").at(key).get<double>();
}

double deriv(Polarization s, double t, double eps, double h, bool of_A) {
    auto f = [&](double x) { return of_A ? kern::A(s, x, eps) : kern::T(s, x, eps); };
    return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h);
}

}  // namespace

TEST_SUITE("kernels") {
    TEST_CASE("endpoint values and slopes") {
        for (double eps : {2.0, 5.0}) {
            for (Polarization s : kPolarizations) {
                CAPTURE(eps);
                CAPTURE(to_string(s));
                const KernelEndpointData e = kernel_endpoints(s, eps);
                CHECK(kernel_T(s, 0.0, eps) == doctest::Approx(e.T0).epsilon(1e-14));
                CHECK(kernel_T(s, 1.0, eps) == doctest::Approx(e.T1).epsilon(1e-14));
                const double h = 1e-3 * std::sqrt(eps - 1.0) / eps;
                CHECK(deriv(s, 0.0, eps, h, false) == doctest::Approx(e.dT0).epsilon(1e-6));
                CHECK(deriv(s, 1.0, eps, 1e-3, false) == doctest::Approx(e.dT1).epsilon(1e-6));
                CHECK(deriv(s, 0.0, eps, h, true) == doctest::Approx(e.dA0).epsilon(1e-6));
            }
        }
    }

    TEST_CASE("kernels vanish without an interface") {
        for (Polarization s : kPolarizations) {
            CHECK(kernel_T(s, 0.3, 1.0) == 0.0);
            CHECK(kernel_A(s, 0.3, 1.0) == 0.0);
            CHECK(kernel_endpoints(s, 1.0).degenerate);
        }
    }

    TEST_CASE("reduced A kernel removes the linear term") {
        for (Polarization s : kPolarizations) {
            const double eps = 3.0, t = 0.2;
            const double dA0 = kernel_endpoints(s, eps).dA0;
            const double direct = (kern::A(s, t, eps) - dA0 * t) / (t * t * t);
            CHECK(kern::A_reduced(s, t, eps) == doctest::Approx(direct).epsilon(1e-10));
        }
    }

    TEST_CASE("large eps tends to the conductor kernels") {
        for (Polarization s : kPolarizations) {
            for (double t : {0.5, 0.9}) {
                CHECK(kernel_T(s, t, 1e12) == doctest::Approx(kern::T_conductor(s, t)).epsilon(1e-5));
            }
        }
    }

    TEST_CASE("f_sigma against high-precision values") {
        const char* names[] = {"par", "perp"};
        for (int i = 0; i < 2; ++i) {
            const Polarization s = kPolarizations[i];
            for (const char* x : {"0.5", "2", "10"}) {
                const std::string key = std::string("f_sigma.") + names[i] + ".eps2.x" + x;
                CAPTURE(key);
                CHECK(f_sigma(s, std::stod(x), 2.0, 1e-12).value == doctest::Approx(reference(key)).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("g_sigma by quadrature against high-precision values") {
        const char* names[] = {"par", "perp"};
        for (int i = 0; i < 2; ++i) {
            for (const char* eps : {"2", "4", "10"}) {
                const std::string key = std::string("g_sigma.") + names[i] + ".eps" + eps;
                CAPTURE(key);
                CHECK(g_sigma_numeric(kPolarizations[i], std::stod(eps)).value ==
                      doctest::Approx(reference(key)).epsilon(1e-9));
            }
        }
    }

    TEST_CASE("integrate_unit handles the square-root endpoint") {
        quad::Options o;
        o.rel_tol = 1e-12;
        const auto r = integrate_unit([](double t) { return std::sqrt(1.0 - t * t); }, o);
        CHECK(r.value == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
    }

    TEST_CASE("kernel set combines polarizations with weights") {
        const KernelSet k = KernelSet::dielectric(3.0);
        const double t = 0.4;
        CHECK(k.Ttot(t) == doctest::Approx(2.0 * kernel_T(Polarization::Parallel, t, 3.0) +
                                           kernel_T(Polarization::Perpendicular, t, 3.0)));
        CHECK(KernelSet::dielectric(1.0).vanishing());
        CHECK(KernelSet::perfect_conductor().sqrt_em1() == 0.0);
    }
}
