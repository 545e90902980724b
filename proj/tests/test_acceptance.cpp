#include "suites.hpp"

#include <iostream>

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
int main() {
    bool ok = true;
    for (int id : ekpoly::cli::suites::suite_members("all")) {
        ekpoly::cli::CriterionResult r = ekpoly::cli::suites::run_criterion(id);
        ok &= r.pass;
        std::cout << ekpoly::cli::criterion_line(r) << "  (" << std::fixed << std::setprecision(1) << r.seconds << " s)"
                  << std::endl;
    }
    return ok ? 0 : 1;
}
