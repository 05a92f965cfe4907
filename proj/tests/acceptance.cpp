#include "loopfilt/suite.hpp"

#include <iostream>

// Runs every acceptance criterion and prints one line each.
int main(int argc, char** argv) {
    lf::SuiteOptions o;
    if (argc > 1) o.seed = std::stoull(argv[1]);
    using Check = lf::CriterionResult (*)(const lf::SuiteOptions&);
    const Check checks[] = {lf::check_commutation,  lf::check_depth_bound_suite, lf::check_triple_agreement,
                            lf::check_bad_denominator, lf::check_jordan_transfer, lf::check_deepening,
                            lf::check_basecase,     lf::check_alignment,       lf::check_kostant};
    bool all = true;
    for (Check check : checks) {
        lf::CriterionResult c = check(o);
        std::cout << "[" << (c.pass ? "PASS" : "FAIL") << "] criterion " << c.id << " (" << c.name << "): " << c.detail
                  << std::endl;
        all = all && c.pass;
    }
    return all ? 0 : 1;
}
