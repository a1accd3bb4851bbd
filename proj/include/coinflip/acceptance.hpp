#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coinflip {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool skipped = false;
    double seconds = 0.0;
    std::string detail;
};

// Runs the eight release criteria in order. quick mode skips the Monte Carlo
// criterion and caps register sizes at four qubits so the whole suite stays
// under half a minute; full mode is the release gate. Exceptions inside a
// criterion are caught and reported as failures, never propagated.
std::vector<CriterionResult> run_acceptance(bool quick);

bool all_pass(const std::vector<CriterionResult>& results);

// One line per criterion: PASS/FAIL/SKIP, id, name, wall time, detail.
void print_report(std::ostream& os, const std::vector<CriterionResult>& results);

}
