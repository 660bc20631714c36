#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qcluster/basic_quiver.hpp"

namespace qcluster {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string residual;  // rendered residual or mismatch summary, empty on pass
    double ms = 0;
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    std::size_t failures() const;
    void append(const VerificationReport& other);
    std::string to_json() const;
    std::string to_junit() const;
    std::string to_text() const;
};

/// A named check returning "" on pass, a residual description otherwise.
/// Exceptions are caught and reported as failures.
struct CheckJob {
    std::string name;
    std::function<std::string()> run;
};
/// Runs jobs on up to `jobs` threads; results keep the job order.
VerificationReport run_checks(const std::string& suite, const std::vector<CheckJob>& jobs, int threads = 1);

/// K' commutation, Cartan relations, quantum Serre relations for f, and the
/// corollary list: f^- f^+ = q_i^-2 f^+ f^- (glued), [e^-_i, f^+_j]/(q_i - q_i^-1) = delta_ij K'_i,
/// and the q-commutation of prefix monomials within one copy.
std::vector<CheckJob> borel_relation_jobs(const BorelRealization& r, const std::string& prefix = "");
VerificationReport run_borel_relations(const BorelRealization& r, int threads = 1);

/// Bundled golden data directory: QCLUSTER_GOLDEN_DIR when set, else the build-time path.
std::string golden_dir();
std::vector<std::string> golden_examples();  // A1, A3, B3
std::vector<CheckJob> golden_jobs(const std::string& example);
VerificationReport run_golden(const std::string& example, int threads = 1);

/// Random skew-symmetrizable seed with 2..max_nodes nodes, d in {1/2, 1}, some frozen.
ClusterSeed random_seed(unsigned seed, int max_nodes = 8);
/// mu_k^q o mu_k^q on every generator X_i; "" when all return X_i exactly.
std::string check_mutation_involution(const ClusterSeed& s, const std::string& k);
/// (L_k a, L_k b) over s against (a, b) over mu_k(s) on basis pairs.
std::string check_form_preservation(const ClusterSeed& s, const std::string& k);

/// One check per acceptance criterion, numbered 1..8.
std::vector<CheckJob> acceptance_jobs();
VerificationReport run_acceptance(int threads = 1);

}  // namespace qcluster
