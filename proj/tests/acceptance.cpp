#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>

#include "qcluster/relations_suite.hpp"

// One line per acceptance criterion; exit status 0 only when all pass.
int main(int argc, char** argv) {
    int threads = 1;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--jobs") == 0) threads = std::stoi(argv[i + 1]);
    const qcluster::VerificationReport r = qcluster::run_acceptance(threads);
    for (const auto& c : r.checks) {
        std::printf("%s criterion %s (%.0f ms)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.ms);
        if (!c.pass) std::printf("     %s\n", c.residual.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", r.checks.size() - r.failures(), r.checks.size());
    return r.all_pass() ? 0 : 1;
}
