#include <doctest.h>

#include <sstream>

#include "cpforce/config.hpp"

using namespace cpforce;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in, "test.conf");
}

const char* kSweep = R"(# sweep
[atom]
lambda0 = 1e-6
alpha = 1e-39
state = excited

[medium]
eps = 4

[thermal]
T_s = 300
T_e = 600

[geometry]
zbar_min = 0.1
zbar_max = 10
count = 3

[output]
format = jsonl
)";

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("a full file parses and validates") {
        const RunConfig c = parse(kSweep);
        CHECK_NOTHROW(c.validate());
        CHECK(c.state == State::Excited);
        CHECK(c.medium.real_eps() == 4.0);
        CHECK(c.format == OutputFormat::Jsonl);
        CHECK(c.is_sweep());
        const std::vector<double> z = c.distances();
        REQUIRE(z.size() == 3);
        CHECK(z[0] == doctest::Approx(1e-7));
        CHECK(z[1] == doctest::Approx(1e-6));
        CHECK(z[2] == doctest::Approx(1e-5));
        CHECK(c.thermal().beta_s == doctest::Approx(thermal_wavelength(300.0)));
    }

    TEST_CASE("grid end points are exact") {
        GridSpec g{0.3, 7.0, 9, true};
        const auto p = g.points();
        CHECK(p.front() == 0.3);
        CHECK(p.back() == 7.0);
        GridSpec lin{1.0, 2.0, 3, false};
        CHECK(lin.points()[1] == doctest::Approx(1.5));
    }

    TEST_CASE("errors name the line and key") {
        auto message = [](const std::string& text) {
            try {
                parse(text);
            } catch (const ValidationError& e) {
                return std::string(e.what());
            }
            return std::string();
        };
        CHECK(message("[atom]\nlambda0 = x\n").find("test.conf:2:") == 0);
        CHECK(message("lambda0 = 1\n").find("outside") != std::string::npos);
        CHECK(message("[atom]\nalpha = 1\nalpha = 2\n").find("twice") != std::string::npos);
        CHECK(message("[atom]\nspin = 1\n").find("spin") != std::string::npos);
        CHECK(message("[atom\n").find("unterminated") != std::string::npos);
    }

    TEST_CASE("validation catches inconsistent settings") {
        RunConfig c = parse(kSweep);
        apply_setting(c, "atom.omega0", "1e15");
        CHECK_THROWS_AS(c.validate(), ValidationError);
        RunConfig d = parse(kSweep);
        apply_setting(d, "geometry.z", "1e-7");
        CHECK_THROWS_AS(d.validate(), ValidationError);
        RunConfig e = parse(kSweep);
        apply_setting(e, "geometry.zbar_max", "0.01");
        CHECK_THROWS_AS(e.validate(), ValidationError);
    }

    TEST_CASE("later settings win") {
        RunConfig c = parse(kSweep);
        apply_setting(c, "medium.eps", "conductor");
        apply_setting(c, "engine.tol", "1e-6");
        CHECK(c.medium.is_conductor());
        CHECK(c.engine.thermal_tol == 1e-6);
        CHECK_THROWS_AS(apply_setting(c, "medium", "4"), ValidationError);
    }

    TEST_CASE("canonical form ignores path and jobs but not physics") {
        RunConfig a = parse(kSweep);
        RunConfig b = a;
        b.jobs = 7;
        b.out_path = "elsewhere.csv";
        CHECK(a.canonical() == b.canonical());
        apply_setting(b, "medium.eps", "5");
        CHECK(a.canonical() != b.canonical());
        CHECK(a.canonical().find("medium=") != std::string::npos);
    }
}
