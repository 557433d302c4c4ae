#pragma once

#include <string>
#include <vector>

namespace qnd {

struct CheckResult {
    std::string id;
    std::string name;
    bool pass = false;
    std::string detail;  // expected vs computed vs tolerance
};

// Reproduction checks, numbered C1..C12. Each pins its tolerances and sample
// counts; `threads` caps worker parallelism (0 = hardware default).
CheckResult check_three_outcome_violation();                         // C1
CheckResult check_dichotomic_violation();                            // C2
CheckResult check_luders_sweep(std::size_t count, unsigned threads); // C3
CheckResult check_luders_tightness(std::size_t count);               // C4
CheckResult check_nn_line_tightness(std::size_t count);              // C5
CheckResult check_mu_sweep(std::size_t count, unsigned threads);     // C6
CheckResult check_dichotomic_nn_sweep(std::size_t count, unsigned threads);  // C7
CheckResult check_oracle_agreement(unsigned threads);                // C8
CheckResult check_nd_frontier_sweep(std::size_t count, unsigned threads);    // C9
CheckResult check_violation_search(std::size_t trials, unsigned threads);    // C10
CheckResult check_entropy_toolbox();                                 // C11
CheckResult check_prep_sweeps(std::size_t count);                    // C12

// Named suites for the CLI: counterexamples | lueders | nn-tight | oracles |
// all. Unknown names raise DomainError.
std::vector<CheckResult> run_suite(const std::string& suite, unsigned threads);

}  // namespace qnd
