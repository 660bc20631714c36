#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcluster/mutation_engine.hpp"
#include "qcluster/qlaurent.hpp"
#include "qcluster/torus.hpp"

namespace qcluster {

/// Quotient of Laurent polynomials in q. Equality is by cross-multiplication;
/// canonical form only strips the monomial content of the denominator.
class QRational {
public:
    QRational() : den_(Rational(1)) {}
    QRational(const QLaurent& n) : num_(n), den_(Rational(1)) {}  // NOLINT
    QRational(const QLaurent& n, const QLaurent& d);

    const QLaurent& num() const { return num_; }
    const QLaurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    /// numerator / denominator when exact
    std::optional<QLaurent> to_laurent() const;

    friend QRational operator+(const QRational& a, const QRational& b);
    friend QRational operator-(const QRational& a, const QRational& b);
    friend QRational operator*(const QRational& a, const QRational& b);
    friend QRational operator/(const QRational& a, const QRational& b);
    friend bool operator==(const QRational& a, const QRational& b);
    friend bool operator!=(const QRational& a, const QRational& b) { return !(a == b); }
    std::string str() const;

private:
    void canonicalize();
    QLaurent num_, den_;
};

/// (k)_t = (1 - t^k)/(1 - t) with t = q^e, and its factorial
QLaurent q_number(int k, const Rational& e);
QRational q_factorial(int k, const Rational& e);

/// Psi(x) = prod_{r>=0} (1 + q^{2r+1} x)^{-1} in q_* = q^flavor, truncated at
/// order R. Coefficients are stored over the common denominator
/// delta = prod_{j<=R} (q_*^{2j} - 1): c_k = scaled[k] / delta.
struct PsiSeries {
    int order = 0;
    Rational flavor{1};
    QLaurent delta;
    std::vector<QLaurent> scaled;

    static PsiSeries make(int order, const Rational& flavor = Rational(1));
    QRational coeff(int k) const { return QRational(scaled[k], delta); }
    /// Psi(q^2 x) = (1 + q x) Psi(x) coefficientwise
    bool self_test() const;
};

/// Linear grading on the lattice: deg X_v = sum_i weights_i v_i.
struct Grading {
    std::vector<Rational> weights;
    Rational degree(const LatticeVector& v) const;
    /// weights with deg(eta) = 1 supported on the first nonzero coordinate
    static Grading along(const LatticeVector& eta);
    static Grading total(std::size_t dim);
};

/// Truncated series over a quantum torus with a common QLaurent denominator.
/// Coefficients are exact for degrees <= hi (all degrees when hi is empty).
class Series {
public:
    Series() = default;
    Series(TorusPtr t, Grading g) : torus_(std::move(t)), grading_(std::move(g)) {}
    static Series from_polynomial(const TorusElement& p, const Grading& g);
    /// Psi(P) for a polynomial P whose terms all have positive degree
    static Series psi(const TorusElement& p, const Grading& g, int order, const Rational& flavor = Rational(1));

    const std::map<LatticeVector, QLaurent>& terms() const { return terms_; }
    const QLaurent& denominator() const { return den_; }
    const std::optional<Rational>& hi() const { return hi_; }
    Rational lo() const;

    friend Series operator*(const Series& a, const Series& b);
    friend Series operator+(const Series& a, const Series& b);
    Series truncated(const Rational& hi) const;

    /// differences of a and b over degrees where both are exact
    static std::vector<std::pair<LatticeVector, QRational>> mismatch(const Series& a, const Series& b);

private:
    TorusPtr torus_;
    Grading grading_;
    std::map<LatticeVector, QLaurent> terms_;
    QLaurent den_{Rational(1)};
    std::optional<Rational> hi_;
    std::optional<Rational> lo_;
};

struct SeriesReport {
    bool ok = false;
    int order = 0;
    std::vector<std::string> mismatches;  // rendered lattice vector: coefficient difference
};

/// Checks Ad_{g(X_eta)}(target) = expected as series: target Psi D = Psi N for
/// expected = N D_1^{-1}...D_r^{-1} (direction g), Psi target D = N Psi (g_star).
SeriesReport verify_conjugation_series(const LatticeVector& eta, const TorusElement& target,
                                       const FracElement& expected, const Rational& d, Direction dir, int order = 8);

/// Psi(P) against prod of Psi over factors, read right to left as g ~ Psi^{-1}.
SeriesReport verify_factorization_series(const TorusElement& p, const Rational& d,
                                         const std::vector<DilogFactor>& factors, int order = 8);

/// Closed-form Ad of random monomials (|m| <= max_m, both directions) against the series.
SeriesReport random_closed_form(int pairs, int max_m, int order, unsigned seed);

/// Named identities on small tori: guv (g(u+v) = g(u)g(v)), gcon (g(v)ug*(v) = qvu+u),
/// gdouble (short-short splitting with a long middle factor), g12 (g(v)ug*(v) = c+u
/// for d in {1, 1/2, 2}), random (closed-form Ad of random monomials against the series).
SeriesReport run_identity(const std::string& name, int order = 8, unsigned seed = 1);
std::vector<std::string> identity_names();

}  // namespace qcluster
