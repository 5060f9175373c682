#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "cpforce/runner.hpp"

using namespace cpforce;

namespace {

RunConfig base() {
    RunConfig c;
    c.lambda0 = 1e-6;
    c.alpha = 1e-39;
    c.medium = MediumSpec::real(4.0);
    c.T_s = 300.0;
    c.T_e = 600.0;
    c.zbar_min = 0.05;
    c.zbar_max = 5.0;
    c.count = 4;
    c.validate();
    return c;
}

}  // namespace

TEST_SUITE("runner") {
    TEST_CASE("worker pool output matches the serial run") {
        const RunConfig c = base();
        const auto zs = c.distances();
        const auto serial = evaluate_points(c, zs, 1);
        const auto pooled = evaluate_points(c, zs, 3);
        REQUIRE(serial.size() == zs.size());
        for (std::size_t i = 0; i < zs.size(); ++i) {
            CHECK(serial[i] == pooled[i]);
            CHECK(serial[i].status != "error");
        }
        std::ostringstream a, b;
        write_records(a, serial, OutputFormat::Csv);
        write_records(b, pooled, OutputFormat::Csv);
        CHECK(a.str() == b.str());
    }

    TEST_CASE("parts add up to the total") {
        const PointRecord r = evaluate_point(base(), 2e-7);
        CHECK(r.dE_total_J == doctest::Approx(r.dE_vac_J + r.dE_eq_J + r.dE_neq_J).epsilon(1e-14));
        CHECK(r.dE_total_unit == doctest::Approx(r.dE_total_J / r.detail.unit_J));
        CHECK(r.zbar == doctest::Approx(0.2));
    }

    TEST_CASE("resolved regimes carry a closed form") {
        RunConfig c = base();
        c.T_s = 1.0;
        c.T_e = 2.0;
        const PointRecord r = evaluate_point(c, 1e-9);
        CHECK(r.regime == "lowT.short");
        REQUIRE(r.asym_total_J.has_value());
        CHECK(r.formula_id == "lowT.short.ground.dielectric");
        CHECK(*r.asym_total_J == doctest::Approx(r.dE_total_J).epsilon(0.05));
    }

    TEST_CASE("regime table follows the grid") {
        const auto rows = regime_table(base());
        CHECK(rows.size() == 4);
        std::ostringstream os;
        write_regimes(os, rows, OutputFormat::Csv);
        CHECK(os.str().rfind("z_m,zbar,regime,", 0) == 0);
    }

    TEST_CASE("cache stores and loads atomically by key") {
        const std::string dir = (std::filesystem::temp_directory_path() / "cpforce_unit_cache").string();
        std::filesystem::remove_all(dir);
        const ResultCache cache(dir);
        const RunConfig c = base();
        const std::string k = ResultCache::key(c, "sweep");
        CHECK(k.size() == 64);
        CHECK(k != ResultCache::key(c, "shift"));
        RunConfig d = c;
        d.jobs = 4;
        CHECK(k == ResultCache::key(d, "sweep"));
        CHECK_FALSE(cache.load(k).has_value());
        cache.store(k, "payload\n");
        CHECK(cache.load(k).value() == "payload\n");
        int files = 0;
        for (const auto& e : std::filesystem::directory_iterator(dir)) {
            (void)e;
            ++files;
        }
        CHECK(files == 1);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("sha256 of a known string") {
        CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
