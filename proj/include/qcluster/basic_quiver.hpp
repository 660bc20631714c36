#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcluster/lie_data.hpp"
#include "qcluster/seed.hpp"
#include "qcluster/torus.hpp"

namespace qcluster {

struct EPathUnavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Labeling { plain, bar, prime };
std::string node_label(Labeling lab, int k);

struct BasicQuiverSeed {
    ReducedWord word;
    Labeling labeling = Labeling::plain;
    ClusterSeed seed;
    std::string label(int k) const { return node_label(labeling, k); }
};

/// Q_F of the word: nodes 1..N+n, F_in and F_out frozen, no E nodes.
BasicQuiverSeed build_basic_seed(const ReducedWord& word, Labeling lab = Labeling::plain);

/// DOT of Q_F plus the n E nodes N+n+1..N+2n as gray frozen placeholders without arrows.
std::string export_basic_dot(const BasicQuiverSeed& s, const std::string& name = "Q");

/// Ordered node path. Without a terminal the polynomial skips the last node;
/// an E-path ends at a symbolic E node (index N+n+i) that is not in Q_F, so
/// all listed nodes enter its polynomial.
struct PathPolynomial {
    std::vector<std::string> nodes;
    std::optional<int> terminal;

    std::vector<std::string> polynomial_nodes() const;
    TorusElement polynomial(const TorusPtr& t) const;
    TorusElement monomial(const TorusPtr& t) const;
    std::string str() const;
};

/// root -> node indices of the word, ending with the symbolic E index N+n+i
using EPathTable = std::map<int, std::vector<int>>;

/// Bundled E-path data: generated for standard A_n words, stored for B3 and B2
/// in the reversed short-root numbering. nullopt otherwise.
std::optional<EPathTable> bundled_e_paths(const ReducedWord& w);
/// Depth-first search over arrows of Q_F from N+i for paths whose polynomial
/// e satisfies [e, f_j]/(q_i - q_i^-1) = delta_ij K'_j on the single quiver.
std::map<int, std::vector<std::vector<int>>> search_e_paths(const ReducedWord& w, int max_len = 8);

PathPolynomial f_path(const BasicQuiverSeed& s, int i);
PathPolynomial e_path(const BasicQuiverSeed& s, int i, const EPathTable* user = nullptr);

enum class BorelMode { single, doubled, tensor_square };
std::string mode_name(BorelMode m);
BorelMode parse_mode(const std::string& s);

/// A single basic quiver, or two glued along F_out(left) = F_in(right).
struct GluedSeed {
    BorelMode kind = BorelMode::single;
    std::optional<ReducedWord> left;  // absent in single mode
    ReducedWord right;
    Labeling left_lab = Labeling::plain, right_lab = Labeling::plain;
    ClusterSeed seed;
    std::map<std::string, std::string> rename_left;

    std::string left_node(int k) const;  // label in the glued seed
    std::string right_node(int k) const { return node_label(right_lab, k); }
    /// F_in node of the right copy glued to left F_out N+i
    std::string glue_node(int i) const;
    /// concatenated F_i path: left row without F_out, then the right row
    std::vector<std::string> f_path_nodes(int i) const;
    std::size_t left_count(int i) const;
};

GluedSeed single_quiver(const ReducedWord& w);
/// Q^{X Xbar}: left X with plain labels, right reverse(X) with bar labels.
GluedSeed glue_doubled(const ReducedWord& x);
/// Q^{X X'}: left X plain, right X primed.
GluedSeed glue_tensor(const ReducedWord& x);

struct BorelGenerators {
    int root = 0;
    std::vector<std::string> path;
    TorusElement f, K;
    TorusElement f_minus, f_plus;  // left part, right part
    /// prefix monomials with their word position and sign: ("+", k) ends at right node k
    struct Part {
        int k;
        int sign;
        TorusElement monomial;
        int copy = 0;  // 0 left (or single), 1 right
    };
    std::vector<Part> parts;
    std::optional<TorusElement> e_minus;  // E-path polynomial on the right copy
};

struct BorelRealization {
    GluedSeed glued;
    TorusPtr torus;
    std::map<int, BorelGenerators> gens;
};

BorelRealization assemble_borel(const GluedSeed& g, const EPathTable* user_e_paths = nullptr);
/// Convention used by the relation battery: the right copy always carries w,
/// so doubled mode glues reverse(w) on the left.
BorelRealization realize(const ReducedWord& w, BorelMode mode, const EPathTable* user_e_paths = nullptr);

}  // namespace qcluster
