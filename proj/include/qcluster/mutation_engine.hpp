#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcluster/basic_quiver.hpp"
#include "qcluster/torus.hpp"

namespace qcluster {

struct NonIntegerCommutation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NestedFraction : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ChainNotQSquared : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoMatchingNode : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Linear map between lattices: images[i] is the image of basis vector i of
/// `from` written in the basis of `to`. Monomials map as X_lambda -> X_{L lambda}.
struct LatticeMap {
    TorusPtr from, to;
    std::vector<LatticeVector> images;

    LatticeVector apply(const LatticeVector& v) const;
    TorusElement apply(const TorusElement& x) const;
    /// (*this) o other: other maps into this->from
    LatticeMap compose(const LatticeMap& other) const;
    static LatticeMap identity(const TorusPtr& t);
};

/// L_k from the torus of mu_k(s) to the torus of s:
/// e^_k -> -e_k, e^_i -> e_i + [b_ki]_+ e_k.
LatticeMap monomial_transform(const ClusterSeed& s, const std::string& k, TorusPtr from = nullptr,
                              TorusPtr to = nullptr);

enum class Direction { g, g_star };

/// N * D_1^{-1} * ... * D_r^{-1} with binomials D_j = 1 + c_j X_{eta_j}.
class FracElement {
public:
    struct Binomial {
        QLaurent c;
        LatticeVector eta;
    };

    FracElement() = default;
    FracElement(TorusElement n) : num_(std::move(n)) {}  // NOLINT: polynomial embeds

    const TorusElement& numerator() const { return num_; }
    const std::vector<Binomial>& denominators() const { return dens_; }
    bool is_polynomial() const { return dens_.empty(); }
    /// right-divides the numerator by denominators while exact
    void simplify();
    /// exact comparison with a polynomial, valid with pending denominators
    bool equals(const TorusElement& p) const;
    std::string str() const;

    FracElement mapped(const LatticeMap& L) const;
    friend FracElement ad_dilog_monomial(const FracElement& x, const LatticeVector& eta, const Rational& d,
                                         Direction dir);

private:
    TorusElement num_;
    std::vector<Binomial> dens_;
};

/// Ad_{g_{b_*}(X_eta)} (dir g) or its inverse (dir g_star), b_*^2 = d b^2.
/// For X_lambda with m = -(lambda,eta)/d: m > 0 multiplies on the right by
/// prod_{j<=m} (1 + q^{-(2j-1)d} X_eta), m < 0 divides by prod_{j<=|m|} (1 + q^{(2j-1)d} X_eta).
FracElement ad_dilog_monomial(const FracElement& x, const LatticeVector& eta, const Rational& d,
                              Direction dir = Direction::g);

/// mu_k^q = Ad_{g*(X_k)} o L_k, from the torus of mu_k(s) into fractions over s.
FracElement quantum_mutation(const FracElement& x, const ClusterSeed& s, const std::string& k,
                             const TorusPtr& from, const TorusPtr& to);

struct DilogFactor {
    LatticeVector eta;
    Rational flavor;  // g_{b_*} with b_*^2 = flavor * b^2
    Direction direction = Direction::g;
};

/// g(sum of terms) as an ordered product of monomial factors. Terms are given
/// longest prefix first; consecutive terms must pair to -d (plain split) or to
/// -2d with d = 1/2 (split with a middle long factor on the summed vector).
std::vector<DilogFactor> dilog_factorize(const TorusForm& t, const std::vector<LatticeVector>& terms,
                                         const Rational& d);

enum class PhiKind { phi1, phi3 };
std::string phi_name(PhiKind k);
PhiKind parse_phi(const std::string& s);

struct PhiFactors {
    GluedSeed glued;
    TorusPtr torus;
    std::vector<DilogFactor> factors;
    std::vector<int> outer;  // word position k of the outer factor each came from
};

/// Phi1 on Q^{W Wbar}, Phi3 on Q^{W W'}; E-path data is that of the left word.
PhiFactors build_phi(const GluedSeed& glued, PhiKind which, const EPathTable* user_e_paths = nullptr);
PhiFactors build_phi(const ReducedWord& w, PhiKind which, const EPathTable* user_e_paths = nullptr);

struct MutationSequence {
    std::vector<std::string> nodes;
    std::vector<ClusterSeed> seeds;  // seeds[0] initial, seeds[j] after j mutations
    LatticeMap M;                    // final lattice -> initial lattice
    LatticeMap M_inverse;            // initial lattice -> final lattice
    const ClusterSeed& final_seed() const { return seeds.back(); }
};

/// Reads factors right to left: m_j is the unfrozen node with M_{j-1}(e_{m_j}) = eta_j.
MutationSequence derive_mutation_sequence(const std::vector<DilogFactor>& factors, const TorusPtr& torus);

/// Ad_Phi for Phi = product of the factors in order.
FracElement apply_phi(const std::vector<DilogFactor>& factors, const FracElement& x);

struct FlipRootReport {
    int root = 0;
    bool path_polynomial_ok = false;  // Ad_Phi(f) = left F_i path polynomial
    bool full_monomial_ok = false;    // Ad_Phi(K') = K'
    bool pullback_ok = false;         // M^{-1} turns the result into a path of the mutated seed
    std::vector<std::string> mutated_path;
    std::string residual;
};

struct FlipReport {
    PhiKind which;
    std::vector<FlipRootReport> roots;
    std::vector<std::string> sequence;
    ClusterSeed mutated;
    bool all_ok() const;
};

FlipReport verify_flip(const PhiFactors& phi, const MutationSequence& seq);

}  // namespace qcluster
