#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcluster/rational.hpp"

namespace qcluster {

enum class LieType { A, B, C, D, E, F, G };

/// Which end of a B/C Dynkin diagram carries the short root.
/// Bourbaki: B_n has root n short, C_n has roots 1..n-1 short.
/// Reversed: the index order is flipped (B3 reversed has root 1 short).
enum class ShortRootConvention { bourbaki, reversed };

struct InvalidDatum : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotReduced : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotLongest : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

char lie_type_char(LieType t);
LieType parse_lie_type(const std::string& s);
std::string convention_name(ShortRootConvention c);
ShortRootConvention parse_convention(const std::string& s);

struct RootDatum {
    LieType type = LieType::A;
    int rank = 0;
    ShortRootConvention convention = ShortRootConvention::bourbaki;
    std::vector<std::vector<int>> cartan;  // a_ij, 0-based storage
    std::vector<Rational> d;               // multipliers

    int a(int i, int j) const { return cartan[i - 1][j - 1]; }  // 1-based roots
    const Rational& mult(int i) const { return d[i - 1]; }
    bool adjacent(int i, int j) const { return i != j && a(i, j) != 0; }
    int positive_root_count() const;
    std::string name() const;  // "B3"
};

RootDatum cartan_datum(LieType type, int rank,
                       ShortRootConvention conv = ShortRootConvention::bourbaki);

/// A reduced expression of the longest Weyl group element with its index maps.
/// Node indices are 1-based: 1..N are word positions, N+1..N+n the F_out nodes.
class ReducedWord {
public:
    const RootDatum& datum() const { return datum_; }
    const std::vector<int>& letters() const { return letters_; }
    int N() const { return static_cast<int>(letters_.size()); }
    int n() const { return datum_.rank; }

    int root(int k) const;   // i_k, with i_{N+j} = j
    int plus(int k) const;   // k^+ for k in 1..N
    int minus(int k) const;  // k^- for k in 1..N+n, 0 if none
    int star(int i) const;   // last position with letter i
    const std::vector<int>& f_in() const { return f_in_; }
    std::vector<int> f_out() const;
    bool is_frozen(int k) const;
    /// positions with letter i, then N+i
    std::vector<int> row(int i) const;

    friend ReducedWord validate_reduced_word(const RootDatum& datum, const std::vector<int>& letters);

private:
    RootDatum datum_;
    std::vector<int> letters_;
    std::vector<int> plus_;   // index k-1
    std::vector<int> minus_;  // index k-1, size N+n
    std::vector<int> f_in_;
};

ReducedWord validate_reduced_word(const RootDatum& datum, const std::vector<int>& letters);
ReducedWord reverse_word(const ReducedWord& w);

/// sigma(kbar) = l with i_l = ibar_kbar and the same number of earlier
/// occurrences of that letter. Also maps N+j to N+j.
std::map<int, int> sigma_bijection(const ReducedWord& word, const ReducedWord& reversed);

/// The standard A_n word (1,2,1,3,2,1,...,n,...,1).
std::vector<int> standard_a_word(int n);

std::vector<int> parse_word(const std::string& csv);
std::string format_word(const std::vector<int>& letters);

}  // namespace qcluster
