#include <doctest.h>

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "cpforce/asymptotics.hpp"
#include "cpforce/validation.hpp"

using namespace cpforce;

namespace {

double reference(const std::string& key) {
    std::ifstream in(reference_file_path());
    REQUIRE(in);
    return nlohmann::json::parse(in).at("values").at(key).get<double>();
}

DimensionlessParams params(double eps, double zbar, double bs, double be) {
    DimensionlessParams p;
    p.eps = eps;
    p.zbar = zbar;
    p.bs = bs;
    p.be = be;
    return p;
}

}  // namespace

TEST_SUITE("asymptotics") {
    TEST_CASE("closed-form g is the weighted sum of the polarization integrals") {
        for (const char* e : {"2", "4", "10"}) {
            const double g = 2.0 * reference(std::string("g_sigma.par.eps") + e) +
                             reference(std::string("g_sigma.perp.eps") + e);
            CAPTURE(e);
            CHECK(coeff_g(std::stod(e)) == doctest::Approx(g).epsilon(1e-10));
        }
    }

    TEST_CASE("g is negative and tends to the conductor value") {
        for (double eps = 1.05; eps < 1e4; eps *= 1.7) CHECK(coeff_g(eps) < 0.0);
        CHECK(coeff_g(1e12) == doctest::Approx(kConductorG).epsilon(1e-4));
        CHECK(coeff_g(MediumSpec::conductor()) == kConductorG);
        CHECK_THROWS_AS(coeff_g(1.0), DomainError);
    }

    TEST_CASE("f coefficients") {
        CHECK(coeff_f(1, 1.0).value == 0.0);
        CHECK(coeff_f(5, 1.0).value == doctest::Approx(2.0));
        CHECK(coeff_f(6, 4.0).value == doctest::Approx(1.0 / 3.0));
        CHECK(coeff_f(2, 2.0).value == doctest::Approx(reference("f2.eps2")).epsilon(1e-10));
        CHECK(coeff_f(2, 4.0).value == doctest::Approx(reference("f2.eps4")).epsilon(1e-10));
        CHECK(coeff_f(3, 2.0).value == doctest::Approx(reference("f3.eps2")).epsilon(1e-10));
        CHECK(coeff_f(3, 4.0).value == doctest::Approx(reference("f3.eps4")).epsilon(1e-10));
        CHECK_THROWS_AS(coeff_f(7, 1.0), DomainError);
        CHECK_THROWS_AS(coeff_f(8, 2.0), std::invalid_argument);
    }

    TEST_CASE("classifier labels") {
        CHECK(classify_regime(params(2.0, 1e-3, 1e3, 2e3)).str() == "lowT.short");
        CHECK(classify_regime(params(2.0, 1e3, 50.0, 100.0)).str() == "lowT.long");
        CHECK(classify_regime(params(2.0, 1e-2, 1e-3, 2e-3)).str() == "highT.intermediate");
        CHECK(classify_regime(params(2.0, 1.0, 1.0, 2.0)).str() == "crossover");
        const RegimeLabel l = classify_regime(params(1.0, 1.0, 1e3, 1e3));
        CHECK_FALSE(l.resolved());
        CHECK_FALSE(l.reason.empty());
        CHECK_THROWS_AS(classify_regime(params(2.0, 1.0, 1e3, 1e3), 0.5), ValidationError);
    }

    TEST_CASE("margins are reported for every condition") {
        const RegimeLabel l = classify_regime(params(2.0, 1e-3, 1e3, 2e3), 10.0);
        REQUIRE(l.margins.size() == 2);
        CHECK(l.min_margin() == doctest::Approx(500.0));
        // Raising the margin beyond what is achieved makes the label a crossover.
        CHECK_FALSE(classify_regime(params(2.0, 1e-3, 1e3, 2e3), 1e4).resolved());
    }

    TEST_CASE("series slope matches a central difference") {
        Series s;
        s.add(1.5, -3.0).add(-0.7, -1.0, Series::Osc::Cos).add(0.2, -2.0, Series::Osc::Sin);
        for (double z : {0.7, 3.0, 11.0}) {
            const double h = 1e-5 * z;
            const double fd = (s.value(z + h) - s.value(z - h)) / (2.0 * h);
            CHECK(s.slope(z) == doctest::Approx(fd).epsilon(1e-7));
        }
    }

    TEST_CASE("formula ids and refusal") {
        const DimensionlessParams p = params(2.0, 1e-3, 1e3, 2e3);
        const RegimeLabel l = classify_regime(p);
        CHECK(asymptotic_expansion(p, -1, l).formula_id == "lowT.short.ground.dielectric");
        CHECK(asymptotic_expansion(p, 1, l).formula_id == "lowT.short.excited.dielectric");
        DimensionlessParams c = p;
        c.conductor = true;
        c.eps = kInf;
        CHECK(asymptotic_expansion(c, -1, classify_regime(c)).formula_id == "conductor.lowT.short.ground");
        CHECK_THROWS_AS(asymptotic_expansion(p, -1, RegimeLabel{}), RegimeRefused);
    }

    TEST_CASE("thermal blocks are antisymmetric in the state") {
        const DimensionlessParams p = params(3.0, 0.02, 0.001, 0.002);
        const RegimeLabel l = classify_regime(p);
        REQUIRE(l.resolved());
        const ReducedExpansion g = asymptotic_expansion(p, -1, l);
        const ReducedExpansion e = asymptotic_expansion(p, 1, l);
        CHECK(g.eq.value(p.zbar) == doctest::Approx(-e.eq.value(p.zbar)));
        CHECK(g.neq.value(p.zbar) == doctest::Approx(-e.neq.value(p.zbar)));
    }

    TEST_CASE("long-distance vacuum series of the ground state is the z^-4 law") {
        const Series s = vac_long_series(KernelSet::dielectric(4.0), -1);
        CHECK(s.value(50.0) == doctest::Approx(coeff_g(4.0) / (16.0 * M_PI) / std::pow(50.0, 4)));
    }
}
