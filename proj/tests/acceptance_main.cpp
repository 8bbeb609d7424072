// Acceptance gate: one line per criterion, nonzero exit on any failure.
// --quick shrinks the statistical case counts for a fast smoke pass;
// --inject-dbe-break adds a deliberately unbalanced kernel (negative
// control, expected to fail A1). Remaining arguments select criterion ids.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "srrw/validate.hpp"

int main(int argc, char** argv) {
    bool quick = false;
    bool inject = false;
    std::vector<std::string> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0)
            quick = true;
        else if (std::strcmp(argv[i], "--inject-dbe-break") == 0)
            inject = true;
        else
            only.emplace_back(argv[i]);
    }

    const auto results = srrw::run_acceptance(quick, inject, only);
    if (results.empty()) {
        std::fprintf(stderr, "no criteria selected\n");
        return 1;
    }

    int failures = 0;
    for (const auto& r : results) {
        std::printf("%-4s %-38s %s  (%6.2fs)  %s\n", r.id.c_str(), r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.seconds, r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", results.size());
    else
        std::printf("%d of %zu criteria failed\n", failures, results.size());
    return failures == 0 ? 0 : 1;
}
