#include <doctest.h>

#include <cmath>

#include "cpforce/core.hpp"

using namespace cpforce;

TEST_SUITE("core") {
    TEST_CASE("thermal wavelength inverts temperature") {
        const double beta = thermal_wavelength(300.0);
        CHECK(beta == doctest::Approx(phys::hbar * phys::c / (phys::kB * 300.0)));
        CHECK(temperature_from_wavelength(beta) == doctest::Approx(300.0));
        CHECK(std::isinf(thermal_wavelength(0.0)));
        CHECK(temperature_from_wavelength(kInf) == 0.0);
        CHECK_THROWS_AS(thermal_wavelength(-1.0), ValidationError);
    }

    TEST_CASE("reduced variables use lambda0 = c / omega0") {
        const AtomSpec atom = AtomSpec::from_wavelength(2e-6, 1e-39, State::Excited);
        CHECK(atom.lambda0() == doctest::Approx(2e-6));
        CHECK(atom.sign() == 1);
        CHECK(atom.omega_ab() > 0.0);
        const DimensionlessParams p =
            nondimensionalize(atom, MediumSpec::real(3.0), ThermalConfig{4e-6, 8e-6}, Geometry{1e-6});
        CHECK(p.zbar == doctest::Approx(0.5));
        CHECK(p.bs == doctest::Approx(2.0));
        CHECK(p.be == doctest::Approx(4.0));
        CHECK(p.a(p.bs) == doctest::Approx(2.0 * 0.5 * std::sqrt(2.0) / 2.0));
        CHECK(p.b(p.be) == doctest::Approx(0.25));
    }

    TEST_CASE("conductor has infinite permittivity in reduced form") {
        const AtomSpec atom = AtomSpec::from_wavelength(1e-6, 1e-39, State::Ground);
        const DimensionlessParams p = nondimensionalize(atom, MediumSpec::conductor(), ThermalConfig::zero(), Geometry{1e-7});
        CHECK(p.conductor);
        CHECK(std::isinf(p.eps));
        CHECK_THROWS_AS(p.a(1.0), DomainError);
    }

    TEST_CASE("shift unit scales energy and force") {
        const AtomSpec atom = AtomSpec::from_wavelength(1e-6, 2e-39, State::Ground);
        const ShiftUnit u = shift_unit(atom);
        const double expect = phys::hbar / (4.0 * phys::pi * phys::eps0) * atom.alpha * atom.omega0 / 1e-18;
        CHECK(u.scale == doctest::Approx(expect));
        CHECK(u.to_newton(1.0) == doctest::Approx(expect / 1e-6));
        CHECK(u.from_joule(u.to_joule(3.5)) == doctest::Approx(3.5));
    }

    TEST_CASE("invalid inputs are rejected") {
        CHECK_THROWS_AS(validate(Geometry{0.0}), ValidationError);
        CHECK_THROWS_AS(validate(Geometry{std::nan("")}), ValidationError);
        CHECK_THROWS_AS(validate(MediumSpec::real(0.5)), ValidationError);
        CHECK_THROWS_AS(AtomSpec::from_wavelength(-1.0, 1e-39, State::Ground), ValidationError);
        CHECK_NOTHROW(validate(MediumSpec::conductor()));
    }
}
