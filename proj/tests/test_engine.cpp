#include <doctest.h>

#include <cmath>

#include "cpforce/engine.hpp"

using namespace cpforce;

namespace {

const AtomSpec kGround = AtomSpec::from_wavelength(1e-6, 1e-39, State::Ground);
const AtomSpec kExcited = AtomSpec::from_wavelength(1e-6, 1e-39, State::Excited);

ThermalConfig thermal(double Ts, double Te) { return ThermalConfig::from_temperatures(Ts, Te); }

}  // namespace

TEST_SUITE("engine") {
    TEST_CASE("thermal parts flip sign with the state") {
        const MediumSpec m = MediumSpec::real(3.0);
        const Geometry g{5e-7};
        const ThermalConfig th = thermal(300.0, 600.0);
        const PartSI eg = shift_eq(kGround, m, g, th.beta_e);
        const PartSI ee = shift_eq(kExcited, m, g, th.beta_e);
        const PartSI ng = shift_neq(kGround, m, g, th);
        const PartSI ne = shift_neq(kExcited, m, g, th);
        CHECK(eg.value != 0.0);
        CHECK(ng.value != 0.0);
        CHECK(std::abs(eg.value + ee.value) <= 1e-12 * std::abs(eg.value));
        CHECK(std::abs(ng.value + ne.value) <= 1e-12 * std::abs(ng.value));
    }

    TEST_CASE("equal temperatures switch off the non-equilibrium part") {
        const PartSI n = shift_neq(kGround, MediumSpec::real(4.0), Geometry{3e-7}, thermal(500.0, 500.0));
        CHECK(n.value == 0.0);
    }

    TEST_CASE("perfect conductor has no non-equilibrium part") {
        const PartSI n = shift_neq(kGround, MediumSpec::conductor(), Geometry{3e-7}, thermal(300.0, 900.0));
        CHECK(n.value == 0.0);
    }

    TEST_CASE("no interface gives zero in every part") {
        const ShiftBreakdown b =
            total_shift(kExcited, MediumSpec::real(1.0), Geometry{4e-7}, thermal(300.0, 600.0));
        CHECK(b.vac.value == 0.0);
        CHECK(b.eq.value == 0.0);
        CHECK(b.neq.value == 0.0);
        CHECK(b.total == 0.0);
    }

    TEST_CASE("zero temperature leaves only the vacuum part") {
        const ShiftBreakdown b = total_shift(kGround, MediumSpec::real(2.0), Geometry{2e-7}, ThermalConfig::zero());
        CHECK(b.eq.value == 0.0);
        CHECK(b.neq.value == 0.0);
        CHECK(b.vac.value < 0.0);
        CHECK(b.total == b.vac.value);
        CHECK(b.total_unit() == doctest::Approx(b.total / shift_unit(kGround).scale));
    }

    TEST_CASE("ground-state vacuum shift is attractive and monotone") {
        const MediumSpec m = MediumSpec::real(4.0);
        double prev = -kInf;
        for (double z : {1e-8, 1e-7, 1e-6, 1e-5}) {
            const double e = shift_vac(kGround, m, Geometry{z}).total.value;
            CAPTURE(z);
            CHECK(e < 0.0);
            CHECK(e > prev);
            prev = e;
        }
    }

    TEST_CASE("force methods agree") {
        const MediumSpec m = MediumSpec::real(2.0);
        const ThermalConfig th = thermal(2000.0, 4000.0);
        for (const AtomSpec& atom : {kGround, kExcited}) {
            for (double z : {3e-7, 1.5e-6}) {
                const ForceBreakdown a = force(atom, m, Geometry{z}, th, ForceMethod::DifferentiateUnderIntegral);
                const ForceBreakdown c = force(atom, m, Geometry{z}, th, ForceMethod::CentralDifference);
                CAPTURE(z);
                CHECK(a.total.value == doctest::Approx(c.total.value).epsilon(1e-4));
            }
        }
    }

    TEST_CASE("long-distance vacuum series takes over smoothly") {
        EngineOptions near, far;
        near.oscillation_cutoff = 1e9;
        far.oscillation_cutoff = 10.0;
        const Geometry g{8e-6};
        const double a = shift_vac(kGround, MediumSpec::real(3.0), g, near).total.value;
        const double b = shift_vac(kGround, MediumSpec::real(3.0), g, far).total.value;
        CHECK(b == doctest::Approx(a).epsilon(1e-3));
    }

    TEST_CASE("invalid input is rejected") {
        CHECK_THROWS_AS(total_shift(kGround, MediumSpec::real(2.0), Geometry{-1.0}, ThermalConfig::zero()),
                        ValidationError);
        CHECK_THROWS_AS(total_shift(kGround, MediumSpec::real(0.2), Geometry{1e-7}, ThermalConfig::zero()),
                        ValidationError);
    }
}
