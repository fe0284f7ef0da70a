#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace levy_spectra {

struct AcceptanceOptions {
    int workers = 0;
    std::string scratch_dir = "acceptance_scratch";  // criterion 10 writes here
    std::vector<int> only;                           // empty: all criteria
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

// One "[PASS]"/"[FAIL]" line per criterion plus a summary; 0 iff all pass.
int run_acceptance_suite(const AcceptanceOptions& options, std::ostream& out);

}  // namespace levy_spectra
