// Acceptance suite: runs every reproduction criterion at its stated
// tolerance and prints one pass/fail line per criterion. Exit 0 iff all
// criteria pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qnd/verify.hpp"

namespace {

struct Criterion {
    std::string id;
    double time_limit_s;  // 0 = no runtime requirement
    std::function<qnd::CheckResult()> run;
};

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const unsigned threads = 0;  // hardware default

    const std::vector<Criterion> criteria = {
        {"C1", 1.0, [] { return qnd::check_three_outcome_violation(); }},
        {"C2", 1.0, [] { return qnd::check_dichotomic_violation(); }},
        {"C3", 60.0, [&] { return qnd::check_luders_sweep(100000, threads); }},
        {"C4", 0.0, [] { return qnd::check_luders_tightness(1000); }},
        {"C5", 0.0, [] { return qnd::check_nn_line_tightness(1000); }},
        {"C6", 0.0, [&] { return qnd::check_mu_sweep(10000, threads); }},
        {"C7", 0.0, [&] { return qnd::check_dichotomic_nn_sweep(10000, threads); }},
        {"C8", 0.0, [&] { return qnd::check_oracle_agreement(threads); }},
        {"C9", 600.0, [&] { return qnd::check_nd_frontier_sweep(10000, threads); }},
        {"C10", 0.0, [&] { return qnd::check_violation_search(10000, threads); }},
        {"C11", 0.0, [] { return qnd::check_entropy_toolbox(); }},
        {"C12", 0.0, [] { return qnd::check_prep_sweeps(10000); }},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = clock::now();
        const qnd::CheckResult r = c.run();
        const double elapsed =
            std::chrono::duration<double>(clock::now() - start).count();
        bool pass = r.pass;
        std::string note;
        if (c.time_limit_s > 0.0) {
            if (elapsed >= c.time_limit_s) pass = false;
            char buf[64];
            std::snprintf(buf, sizeof(buf), "; runtime %.2fs (limit %.0fs)", elapsed,
                          c.time_limit_s);
            note = buf;
        }
        std::printf("[%s] %s %s\n        %s%s\n", pass ? "PASS" : "FAIL", r.id.c_str(),
                    r.name.c_str(), r.detail.c_str(), note.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
