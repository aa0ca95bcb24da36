#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fsas::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the full acceptance suite, printing one pass/fail line per criterion.
std::vector<CriterionResult> run_all(std::ostream& log, int threads);

// Convenience for the CLI: returns the number of failed criteria.
int run_and_report(std::ostream& log, int threads);

}  // namespace fsas::selftest
