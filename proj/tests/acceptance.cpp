// Acceptance suite: runs every criterion at full scale and prints one
// pass/fail line per criterion.  Exit code 0 iff everything passed.

#include <iostream>

#include "csrg/selftest.hpp"

int main() {
    auto results = csrg::run_acceptance(csrg::SelftestLevel::Full, 1, &std::cout);
    int failures = 0;
    for (auto& r : results) failures += r.pass ? 0 : 1;
    std::cout << "----------------------------------------" << std::endl;
    std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
              << results.size() - failures << "/" << results.size() << " checks)" << std::endl;
    return failures == 0 ? 0 : 1;
}
