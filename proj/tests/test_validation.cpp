#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "cpforce/validation.hpp"

using namespace cpforce;

TEST_SUITE("validation") {
    TEST_CASE("catalog lists the twelve criteria first, in order") {
        const auto& cat = check_catalog();
        REQUIRE(cat.size() >= 12);
        for (int i = 0; i < 12; ++i) CHECK(cat[i].criterion == i + 1);
        CHECK(acceptance_check_ids().size() == 12);
        const std::vector<std::string> all = all_check_ids();
        const std::set<std::string> ids(all.begin(), all.end());
        CHECK(ids.size() == cat.size());
        CHECK(is_known_check("kernels.TprimeA_relation"));
        CHECK_FALSE(is_known_check("no.such.check"));
    }

    TEST_CASE("zero budget leaves every check inconclusive") {
        const auto results = run_suite(all_check_ids(), 0.0);
        REQUIRE(results.size() == all_check_ids().size());
        for (const CheckResult& r : results) CHECK(r.status == CheckStatus::Inconclusive);
        CHECK_FALSE(any_failed(results));
    }

    TEST_CASE("bad selections are usage errors") {
        CHECK_THROWS_AS(run_suite({}, 10.0), std::invalid_argument);
        CHECK_THROWS_AS(run_suite({"no.such.check"}, 10.0), std::invalid_argument);
    }

    TEST_CASE("cheap checks pass") {
        for (const char* id : {"kernels.TprimeA_relation", "quadrature.honesty_corpus", "reference.frozen_oracles"}) {
            const CheckResult r = run_check(id);
            CAPTURE(id);
            CAPTURE(r.detail);
            CHECK(r.status == CheckStatus::Pass);
            CHECK(r.runtime >= 0.0);
        }
    }

    TEST_CASE("tolerance test is relative with a floor") {
        CheckResult r;
        r.measured = 1.0005;
        r.expected = 1.0;
        r.tolerance = 1e-3;
        CHECK(within_tolerance(r));
        r.measured = 1.002;
        CHECK_FALSE(within_tolerance(r));
        r.expected = 0.0;
        r.measured = 1e-15;
        r.floor = 1e-12;
        CHECK(within_tolerance(r));
    }

    TEST_CASE("JSONL round trip") {
        CheckResult r;
        r.check_id = "lowT.neq_long_law";
        r.status = CheckStatus::Fail;
        r.measured = 0.1 + 0.2;
        r.expected = -1.0 / 3.0;
        r.tolerance = 0.05;
        r.runtime = 1.25;
        r.detail = "ratio \"quoted\"\tand tabbed";
        const CheckResult back = check_result_from_jsonl(to_jsonl(r));
        CHECK(back.check_id == r.check_id);
        CHECK(back.status == r.status);
        CHECK(back.measured == r.measured);
        CHECK(back.expected == r.expected);
        CHECK(back.tolerance == r.tolerance);
        CHECK(back.runtime == r.runtime);
        CHECK(back.detail == r.detail);
        CHECK(to_jsonl(back) == to_jsonl(r));
        CHECK(check_status_from_string("Inconclusive") == CheckStatus::Inconclusive);
    }
}
