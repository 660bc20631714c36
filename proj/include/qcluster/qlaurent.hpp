#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcluster/rational.hpp"

namespace qcluster {

/// Laurent polynomial in the formal parameter q with rational exponents
/// and rational coefficients. Terms are kept sorted by exponent, no zeros.
class QLaurent {
public:
    using Term = std::pair<Rational, Rational>;  // (exponent, coefficient)

    QLaurent() = default;
    QLaurent(const Rational& c);  // NOLINT: constant c * q^0
    static QLaurent monomial(const Rational& exponent, const Rational& coeff = 1);
    /// q^{e} - q^{-e}
    static QLaurent q_minus_qinv(const Rational& e);
    /// [n]_{q^e} = (q^{ne} - q^{-ne}) / (q^e - q^{-e})
    static QLaurent q_integer(int n, const Rational& e);
    static QLaurent q_binomial(int n, int k, const Rational& e);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    Rational coeff(const Rational& exponent) const;
    Rational min_exponent() const;
    Rational max_exponent() const;

    QLaurent operator-() const;
    QLaurent& operator+=(const QLaurent& o);
    QLaurent& operator-=(const QLaurent& o);
    QLaurent& operator*=(const QLaurent& o);
    friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
    friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
    friend QLaurent operator*(const QLaurent& a, const QLaurent& b);

    /// Multiply by c q^e.
    QLaurent shifted(const Rational& e, const Rational& c = 1) const;
    /// Substitute q -> q^{s} (s may be negative).
    QLaurent substitute_power(const Rational& s) const;

    /// Exact quotient by (q^e - q^{-e}); nullopt-like flag when not divisible.
    bool divide_by_q_minus_qinv(const Rational& e, QLaurent& out) const;
    /// Exact quotient by another Laurent polynomial; false when not divisible.
    bool divide_exact(const QLaurent& d, QLaurent& out) const;

    friend bool operator==(const QLaurent& a, const QLaurent& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const QLaurent& a, const QLaurent& b) { return !(a == b); }
    friend bool operator<(const QLaurent& a, const QLaurent& b);

    /// e.g. "q^-1 + 2q^{1/2}"; "0" when empty
    std::string str() const;

private:
    void add_term(const Rational& e, const Rational& c);
    std::vector<Term> terms_;
};

}  // namespace qcluster
