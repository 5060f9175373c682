#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "cpforce/records.hpp"

using namespace cpforce;

namespace {

PointRecord sample() {
    PointRecord r;
    r.z_m = 1e-7;
    r.zbar = 0.1;
    r.regime = "lowT.short";
    r.dE_vac_J = -1.2345678901234567e-28;
    r.dE_eq_J = 3.0e-35;
    r.dE_neq_J = -0.1 - 0.2;
    r.dE_total_J = r.dE_vac_J + r.dE_eq_J + r.dE_neq_J;
    r.dE_total_unit = -41.5;
    r.F_total_N = 5e-21;
    r.err_total_J = 1e-40;
    r.asym_total_J = -1.23e-28;
    r.formula_id = "lowT.short.ground.dielectric";
    r.status = "ok";
    r.detail.unit_J = 2.0e-30;
    r.detail.margins = "a=1;b=2";
    r.detail.asym_force_N = 4e-21;
    r.detail.message = "note, with a comma";
    return r;
}

}  // namespace

TEST_SUITE("records") {
    TEST_CASE("numbers survive text") {
        for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
            CHECK(parse_number(format_number(v)) == v);
        }
        CHECK(format_number(0.1) == "0.10000000000000001");
        CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
        CHECK(std::isnan(parse_number("nan")));
        CHECK(parse_number("-inf") == -std::numeric_limits<double>::infinity());
        CHECK_THROWS_AS(parse_number("1.0x"), std::invalid_argument);
        CHECK_THROWS_AS(parse_number(""), std::invalid_argument);
    }

    TEST_CASE("CSV header is fixed") {
        CHECK(csv_header() ==
              "z_m,zbar,regime,dE_vac_J,dE_eq_J,dE_neq_J,dE_total_J,dE_total_unit,F_total_N,err_total_J,"
              "asym_total_J,formula_id,status");
        CHECK(csv_columns().size() == 13);
    }

    TEST_CASE("CSV round trip keeps the columns") {
        const PointRecord r = sample();
        const PointRecord back = record_from_csv(to_csv(r));
        CHECK(back.same_columns(r));
        CHECK(to_csv(back) == to_csv(r));
        PointRecord none = r;
        none.asym_total_J.reset();
        none.formula_id.clear();
        CHECK(record_from_csv(to_csv(none)).same_columns(none));
    }

    TEST_CASE("JSONL round trip keeps everything") {
        PointRecord r = sample();
        CHECK(record_from_jsonl(to_jsonl(r)) == r);
        r.dE_total_J = std::numeric_limits<double>::infinity();
        r.asym_total_J.reset();
        r.detail.asym_force_N.reset();
        const PointRecord back = record_from_jsonl(to_jsonl(r));
        CHECK(std::isinf(back.dE_total_J));
        CHECK_FALSE(back.asym_total_J.has_value());
        CHECK(to_jsonl(back) == to_jsonl(r));
    }

    TEST_CASE("files round trip in both formats") {
        const std::vector<PointRecord> rows{sample(), sample()};
        for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Jsonl}) {
            std::stringstream ss;
            write_records(ss, rows, f);
            const std::string text = ss.str();
            const std::vector<PointRecord> back = read_records(ss, f);
            REQUIRE(back.size() == 2);
            CHECK(back[1].same_columns(rows[1]));
            std::ostringstream again;
            write_records(again, back, f);
            CHECK(again.str() == text);
        }
        std::istringstream headless("1,2,3\n");
        CHECK_THROWS(read_records(headless, OutputFormat::Csv));
    }

    TEST_CASE("format names") {
        CHECK(output_format_from_string("jsonl") == OutputFormat::Jsonl);
        CHECK(std::string(to_string(OutputFormat::Csv)) == "csv");
        CHECK_THROWS(output_format_from_string("xml"));
    }
}
