#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcluster/basic_quiver.hpp"
#include "qcluster/mutation_engine.hpp"

namespace qcluster {

struct UnpolarizedNode : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FormParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// u_k, p_k (word positions), lambda_i (roots) or the constant; copy 1 is the
/// second tensor factor and renders with a prime.
struct Symbol {
    enum Kind { U = 0, P = 1, L = 2, One = 3 };
    Kind kind = One;
    int index = 0;
    int copy = 0;

    friend bool operator<(const Symbol& a, const Symbol& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.copy != b.copy) return a.copy < b.copy;
        return a.index < b.index;
    }
    friend bool operator==(const Symbol& a, const Symbol& b) {
        return a.kind == b.kind && a.index == b.index && a.copy == b.copy;
    }
    bool central() const { return kind == L || kind == One; }
};

enum class FormStyle { unicode, ascii, latex };

class LinearForm {
public:
    LinearForm() = default;
    static LinearForm symbol(Symbol s, const Rational& c = Rational(1));
    /// "3u_1-u_2+2p_1'" style; accepts unicode minus and primes, u/p/λ without index mean index 1
    static LinearForm parse(const std::string& text);

    const std::map<Symbol, Rational>& coeffs() const { return c_; }
    Rational coef(const Symbol& s) const;
    bool is_zero() const { return c_.empty(); }
    bool has_kind(Symbol::Kind k, int copy = -1) const;

    LinearForm& operator+=(const LinearForm& o);
    LinearForm& operator-=(const LinearForm& o);
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    LinearForm scaled(const Rational& s) const;
    /// drop every lambda symbol
    LinearForm without_lambda() const;

    friend bool operator==(const LinearForm& a, const LinearForm& b) { return a.c_ == b.c_; }
    friend bool operator!=(const LinearForm& a, const LinearForm& b) { return !(a == b); }
    std::string str(FormStyle style = FormStyle::unicode) const;

private:
    void add(const Symbol& s, const Rational& c);
    std::map<Symbol, Rational> c_;
};

/// Substitutions x -> x + increment with increments free of the shifted symbols.
struct AffineShift {
    struct Step {
        Symbol target;  // U or P
        LinearForm increment;
    };
    std::vector<Step> steps;

    LinearForm apply(const LinearForm& f) const;
    bool empty() const { return steps.empty(); }
    /// "2p_1 ↦ 2p_1-u_1'-u_3'" for momenta (rendered on 2p), "u_1 ↦ u_1+λ_1" for positions
    std::vector<std::string> render(FormStyle style = FormStyle::unicode) const;
    /// rendered line -> (target, increment on the symbol itself, not on 2p)
    static Step parse_line(const std::string& line);
};

enum class PolarVariant { doubled, single_plus, single_minus, single_minus_sigma, tensor_square };
std::string variant_name(PolarVariant v);
PolarVariant parse_variant(const std::string& s);

struct Polarization {
    PolarVariant variant = PolarVariant::single_plus;
    GluedSeed glued;
    ReducedWord word;  // u_k, p_k index positions of this word
    int copies = 1;
    bool lambda = true;
    std::map<std::string, LinearForm> nodes;

    const LinearForm& node(const std::string& label) const;
    LinearForm form(const LatticeVector& v) const;  // sum_x v_x L_x over glued.seed
    /// sum_k d_{i_k} (coef_p(a) coef_u(b) - coef_u(a) coef_p(b)) over both copies
    Rational omega(const LinearForm& a, const LinearForm& b) const;
    /// node pairs with Omega(L_a, L_b) != w_ab
    std::vector<std::string> omega_mismatches() const;
    Polarization shifted(const AffineShift& s) const;
};

/// Prefix forms on the symbol word:
/// F^{k,s} = s(sum_{j<k} a_{i_j i_k}/2 u_j + u_k/2 - lambda_{i_k}) + p_k,
/// K'_i = sum_k a_{i_k i}/2 u_k - lambda_i.
LinearForm prefix_form(const ReducedWord& w, int k, int sign, int copy = 0, bool lambda = true);
LinearForm cartan_form(const ReducedWord& w, int i, int copy = 0, bool lambda = true);

/// Node forms as differences of consecutive prefix forms along each F_i row.
/// doubled and single_minus polarize Q^{x xbar} and Q^x with the symbol word reverse(x);
/// single_plus, single_minus_sigma and tensor_square use x itself. Each tensor factor
/// takes the single_minus_sigma forms when simply laced and the single_plus forms otherwise.
Polarization polarize(const ReducedWord& x, PolarVariant variant, bool lambda = true);

enum class ShiftGoal { kill_lambda, kill_second_factor };
/// kill_lambda: u_{first r} += C_r with A^T C = 2 lambda, then p_k shifts clearing
/// lambda from F^{k,sign}. kill_second_factor (tensor square): u_{first r} -= sum_{i_k=r} u'_k,
/// with p_k shifts keeping the first factor's prefix forms fixed.
AffineShift normalization_shift(const Polarization& p, ShiftGoal goal, int sign = 0);

/// Lattice vector v with form(v) = f, when one exists.
std::optional<LatticeVector> solve_monomial(const Polarization& p, const LinearForm& f);

struct RenderedFactor {
    Rational flavor;
    LinearForm exponent;  // e^{pi b_* exponent}, i.e. exponent = 2 L
};
std::vector<RenderedFactor> render_phi_operators(const std::vector<DilogFactor>& factors, const TorusForm& torus,
                                                 const Polarization& p);

}  // namespace qcluster
