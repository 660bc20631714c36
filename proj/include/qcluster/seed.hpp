#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcluster/rational.hpp"

namespace qcluster {

struct MutationAtFrozen : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct MultiplierMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct GluingNotInjective : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnknownNode : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct MalformedSeed : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Node label helpers. Bar and prime labels use a combining macron (U+0304)
/// and U+2032; the ASCII spellings "3b" and "3'" are accepted on input.
std::string bar_label(int k);
std::string prime_label(int k);
std::string plain_label(int k);
/// "3b" -> "3̄", "3'" -> "3′"; anything else unchanged
std::string normalize_label(const std::string& s);
/// "3̄" -> "3b", "3′" -> "3'"
std::string ascii_label(const std::string& s);

/// Cluster seed (I, I0, B, D). B is the source of truth; W = DB is derived.
class ClusterSeed {
public:
    ClusterSeed() = default;
    /// Nodes with no arrows.
    ClusterSeed(std::vector<std::string> labels, std::vector<bool> frozen, std::vector<Rational> d);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    std::size_t index(const std::string& label) const;
    std::optional<std::size_t> find(const std::string& label) const;
    bool has(const std::string& label) const { return find(label).has_value(); }

    bool frozen(std::size_t i) const { return frozen_[i]; }
    bool frozen(const std::string& l) const { return frozen_[index(l)]; }
    const Rational& d(std::size_t i) const { return d_[i]; }
    const Rational& d(const std::string& l) const { return d_[index(l)]; }

    const Rational& b(std::size_t i, std::size_t j) const { return B_[i * size() + j]; }
    Rational b(const std::string& i, const std::string& j) const { return b(index(i), index(j)); }
    Rational w(std::size_t i, std::size_t j) const { return d_[i] * b(i, j); }
    Rational w(const std::string& i, const std::string& j) const { return w(index(i), index(j)); }

    /// Sets w_ij = v and w_ji = -v (through B).
    void set_w(std::size_t i, std::size_t j, const Rational& v);
    void add_w(std::size_t i, std::size_t j, const Rational& v);
    void set_frozen(std::size_t i, bool f) { frozen_[i] = f; }

    /// Throws MalformedSeed when W is not skew or B is fractional next to an unfrozen node.
    void validate() const;
    bool is_skew() const;

    friend bool operator==(const ClusterSeed& a, const ClusterSeed& b);
    friend bool operator!=(const ClusterSeed& a, const ClusterSeed& b) { return !(a == b); }

private:
    std::vector<std::string> labels_;
    std::vector<bool> frozen_;
    std::vector<Rational> d_;
    std::vector<Rational> B_;
    std::map<std::string, std::size_t> index_;
};

ClusterSeed mutate_seed(const ClusterSeed& s, const std::string& k);

struct Amalgamation {
    ClusterSeed seed;
    /// new label -> old labels it came from, as ("a"|"b", label)
    std::map<std::string, std::vector<std::pair<char, std::string>>> embedding;
    /// label of a node of seed_a in the result (glued nodes take their partner's label)
    std::map<std::string, std::string> rename_a;
};

/// Glues frozen nodes of a to frozen nodes of b. Labels of a and b must be
/// disjoint apart from the glued pairs; merged nodes keep the b label.
Amalgamation amalgamate(const ClusterSeed& a, const ClusterSeed& b,
                        const std::vector<std::pair<std::string, std::string>>& gluing);

enum class ArrowStyle { thick, thin, dashed, multiple };
std::string style_name(ArrowStyle s);

struct Arrow {
    std::string source, target;
    Rational weight;  // w_{source,target} > 0
    ArrowStyle style;
    friend bool operator<(const Arrow& a, const Arrow& b) {
        if (a.source != b.source) return a.source < b.source;
        if (a.target != b.target) return a.target < b.target;
        return a.weight < b.weight;
    }
    friend bool operator==(const Arrow& a, const Arrow& b) {
        return a.source == b.source && a.target == b.target && a.weight == b.weight && a.style == b.style;
    }
};

/// Weight of a full arrow between nodes with multipliers da, db.
Rational full_weight(const Rational& da, const Rational& db);

struct QuiverView {
    std::vector<Arrow> arrows;  // sorted
    struct Node {
        std::string label;
        bool frozen;
        bool short_root;
    };
    std::vector<Node> nodes;
};

QuiverView quiver_view(const ClusterSeed& s);

std::string export_dot(const ClusterSeed& s, const std::string& name = "Q");
std::string export_json(const ClusterSeed& s);
ClusterSeed import_seed(const std::string& json_text);

}  // namespace qcluster
