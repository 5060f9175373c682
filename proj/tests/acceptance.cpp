// Acceptance gate: one PASS/FAIL line per criterion.
//
// --known-failure ID may be repeated. The exit status is zero only when the
// failing criteria are exactly the known ones, so a fix or a new regression
// both show up.

#include <cstdio>
#include <cstring>
#include <set>
#include <string>

#include "cpforce/records.hpp"
#include "cpforce/validation.hpp"

int main(int argc, char** argv) {
    using namespace cpforce;
    std::set<std::string> known;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--known-failure") == 0 && i + 1 < argc) {
            known.insert(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--known-failure CHECK_ID]...\n");
            return 2;
        }
    }
    std::set<std::string> failed;
    int n = 0;
    for (const CheckInfo& info : check_catalog()) {
        if (info.criterion == 0) continue;
        const CheckResult r = run_check(info.id);
        const bool pass = r.status == CheckStatus::Pass;
        if (!pass) failed.insert(info.id);
        std::printf("criterion %2d %-4s %-32s measured=%s expected=%s tol=%s runtime=%.3fs%s\n", info.criterion,
                    pass ? "PASS" : "FAIL", info.id.c_str(), format_number(r.measured).c_str(),
                    format_number(r.expected).c_str(), format_number(r.tolerance).c_str(), r.runtime,
                    known.count(info.id) ? " (known failure)" : "");
        if (!pass) std::printf("    %s\n", r.detail.c_str());
        ++n;
    }
    std::printf("%d criteria, %zu failed\n", n, failed.size());
    return failed == known ? 0 : 1;
}
