#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcluster/qlaurent.hpp"
#include "qcluster/seed.hpp"

namespace qcluster {

struct SeedMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotExactlyDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense exponent vector over the nodes of a seed, in seed order.
using LatticeVector = std::vector<std::int32_t>;

/// The skew form (e_i, e_j) = w_ij of a seed, stored as integers scaled by
/// a common denominator so pairings run through the int32 kernels.
class TorusForm {
public:
    explicit TorusForm(const ClusterSeed& seed);

    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const ClusterSeed& seed() const { return seed_; }
    std::size_t index(const std::string& label) const { return seed_.index(label); }

    Rational pair(const LatticeVector& a, const LatticeVector& b) const;
    /// W_scaled * v; pair(a, b) == dot(a, w_times(b)) / scale()
    LatticeVector w_times(const LatticeVector& v) const;
    std::int64_t scale() const { return scale_; }

    LatticeVector zero() const { return LatticeVector(dim(), 0); }
    LatticeVector unit(const std::string& label) const;
    /// "1,3,6" or "4,7^2,8^2" (labels accept ASCII aliases)
    LatticeVector parse_vector(const std::string& text) const;
    LatticeVector from_counts(const std::map<std::string, int>& counts) const;
    std::string render(const LatticeVector& v) const;

private:
    ClusterSeed seed_;
    std::vector<std::string> labels_;
    std::int64_t scale_ = 1;
    std::vector<std::int32_t> w_;  // row-major dim x dim
};

using TorusPtr = std::shared_ptr<const TorusForm>;
TorusPtr make_torus(const ClusterSeed& seed);

LatticeVector lattice_add(const LatticeVector& a, const LatticeVector& b, std::int32_t s = 1);

/// Finite sum of Weyl-ordered monomials X_lambda with Laurent coefficients.
/// X_lambda X_mu = q^{-(lambda,mu)} X_{lambda+mu}.
class TorusElement {
public:
    TorusElement() = default;
    explicit TorusElement(TorusPtr t) : torus_(std::move(t)) {}
    static TorusElement monomial(TorusPtr t, const LatticeVector& v, const QLaurent& c = QLaurent(1));
    static TorusElement constant(TorusPtr t, const QLaurent& c);
    /// sum over prefixes of length 1..len-1 (the last node is ignored)
    static TorusElement path_polynomial(TorusPtr t, const std::vector<std::string>& path);
    /// X_{i_1,...,i_m}
    static TorusElement path_monomial(TorusPtr t, const std::vector<std::string>& path);

    const TorusPtr& torus() const { return torus_; }
    const std::map<LatticeVector, QLaurent>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const LatticeVector& v, const QLaurent& c);
    TorusElement& operator+=(const TorusElement& o);
    TorusElement& operator-=(const TorusElement& o);
    TorusElement operator-() const;
    friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
    friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
    friend TorusElement operator*(const TorusElement& a, const TorusElement& b);
    TorusElement scaled(const QLaurent& c) const;

    friend bool operator==(const TorusElement& a, const TorusElement& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TorusElement& a, const TorusElement& b) { return !(a == b); }

    /// "X_{1} + q^{-1}X_{1,1̄}"
    std::string str() const;

private:
    TorusPtr torus_;
    std::map<LatticeVector, QLaurent> terms_;
};

TorusElement mul(const TorusElement& a, const TorusElement& b);
/// [a, b] / (q^d - q^{-d}); throws NotDivisible
TorusElement commutator_quotient(const TorusElement& a, const TorusElement& b, const Rational& d);
/// 1 + c X_eta
TorusElement binomial(const TorusPtr& t, const QLaurent& c, const LatticeVector& eta);
/// r with r * (1 + c X_eta) = p; throws NotExactlyDivisible
TorusElement right_divide(const TorusElement& p, const QLaurent& c, const LatticeVector& eta);
bool try_right_divide(const TorusElement& p, const QLaurent& c, const LatticeVector& eta, TorusElement& out);

}  // namespace qcluster
