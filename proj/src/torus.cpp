#include "qcluster/torus.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qcluster/kernels.hpp"

namespace qcluster {

TorusForm::TorusForm(const ClusterSeed& seed) : seed_(seed), labels_(seed.labels()) {
    const std::size_t n = dim();
    std::int64_t L = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t den = seed.w(i, j).den();
            L = std::lcm(L, den);
        }
    scale_ = L;
    w_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = seed.w(i, j) * Rational(L);
            std::int64_t x = v.to_integer();
            if (x > INT32_MAX || x < INT32_MIN) throw ArithmeticOverflow("skew form entry too large");
            w_[i * n + j] = static_cast<std::int32_t>(x);
        }
}

LatticeVector TorusForm::w_times(const LatticeVector& v) const {
    const std::size_t n = dim();
    LatticeVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t x = kernels::dot(w_.data() + i * n, v.data(), n);
        if (x > INT32_MAX || x < INT32_MIN) throw ArithmeticOverflow("pairing overflow");
        out[i] = static_cast<std::int32_t>(x);
    }
    return out;
}

Rational TorusForm::pair(const LatticeVector& a, const LatticeVector& b) const {
    LatticeVector wb = w_times(b);
    return Rational(kernels::dot(a.data(), wb.data(), dim()), scale_);
}

LatticeVector TorusForm::unit(const std::string& label) const {
    LatticeVector v = zero();
    v[index(label)] = 1;
    return v;
}

LatticeVector TorusForm::from_counts(const std::map<std::string, int>& counts) const {
    LatticeVector v = zero();
    for (const auto& [l, c] : counts) v[index(l)] += c;
    return v;
}

LatticeVector TorusForm::parse_vector(const std::string& text) const {
    LatticeVector v = zero();
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::string t;
        for (char c : tok)
            if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}') t += c;
        if (t.empty()) continue;
        int p = 1;
        auto caret = t.find('^');
        if (caret != std::string::npos) {
            p = std::stoi(t.substr(caret + 1));
            t = t.substr(0, caret);
        }
        v[index(t)] += p;
    }
    return v;
}

std::string TorusForm::render(const LatticeVector& v) const {
    std::string s;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (v[i] == 0) continue;
        if (!s.empty()) s += ",";
        s += labels_[i];
        if (v[i] != 1) s += "^" + std::to_string(v[i]);
    }
    return s;
}

TorusPtr make_torus(const ClusterSeed& seed) { return std::make_shared<const TorusForm>(seed); }

LatticeVector lattice_add(const LatticeVector& a, const LatticeVector& b, std::int32_t s) {
    if (a.size() != b.size()) throw SeedMismatch("lattice vectors of different dimension");
    LatticeVector out(a.size());
    kernels::axpy(a.data(), b.data(), s, out.data(), a.size());
    return out;
}

TorusElement TorusElement::monomial(TorusPtr t, const LatticeVector& v, const QLaurent& c) {
    TorusElement e(std::move(t));
    e.add_term(v, c);
    return e;
}

TorusElement TorusElement::constant(TorusPtr t, const QLaurent& c) {
    LatticeVector z = t->zero();
    return monomial(std::move(t), z, c);
}

TorusElement TorusElement::path_polynomial(TorusPtr t, const std::vector<std::string>& path) {
    TorusElement e(t);
    LatticeVector acc = t->zero();
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        acc[t->index(path[i])] += 1;
        e.add_term(acc, QLaurent(1));
    }
    return e;
}

TorusElement TorusElement::path_monomial(TorusPtr t, const std::vector<std::string>& path) {
    LatticeVector acc = t->zero();
    for (const auto& n : path) acc[t->index(n)] += 1;
    return monomial(std::move(t), acc);
}

void TorusElement::add_term(const LatticeVector& v, const QLaurent& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(v);
    if (it == terms_.end()) {
        terms_.emplace(v, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

namespace {
void check_same(const TorusElement& a, const TorusElement& b) {
    if (a.torus() && b.torus() && a.torus() != b.torus() && a.torus()->seed() != b.torus()->seed())
        throw SeedMismatch("torus elements over different seeds");
}
const TorusPtr& pick(const TorusElement& a, const TorusElement& b) { return a.torus() ? a.torus() : b.torus(); }
}  // namespace

TorusElement& TorusElement::operator+=(const TorusElement& o) {
    check_same(*this, o);
    if (!torus_) torus_ = o.torus_;
    for (const auto& [v, c] : o.terms_) add_term(v, c);
    return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
    check_same(*this, o);
    if (!torus_) torus_ = o.torus_;
    for (const auto& [v, c] : o.terms_) add_term(v, -c);
    return *this;
}

TorusElement TorusElement::operator-() const {
    TorusElement r(torus_);
    for (const auto& [v, c] : terms_) r.terms_.emplace(v, -c);
    return r;
}

TorusElement TorusElement::scaled(const QLaurent& c) const {
    TorusElement r(torus_);
    for (const auto& [v, x] : terms_) r.add_term(v, x * c);
    return r;
}

TorusElement operator*(const TorusElement& a, const TorusElement& b) {
    check_same(a, b);
    TorusElement r(pick(a, b));
    if (a.is_zero() || b.is_zero()) return r;
    const TorusForm& T = *r.torus();
    const std::size_t n = T.dim();
    for (const auto& [mu, cb] : b.terms()) {
        LatticeVector wmu = T.w_times(mu);
        for (const auto& [lam, ca] : a.terms()) {
            Rational p(kernels::dot(lam.data(), wmu.data(), n), T.scale());
            r.add_term(lattice_add(lam, mu), (ca * cb).shifted(-p));
        }
    }
    return r;
}

TorusElement mul(const TorusElement& a, const TorusElement& b) { return a * b; }

std::string TorusElement::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [v, c] : terms_) {
        std::string mon = "X_{" + torus_->render(v) + "}";
        if (std::all_of(v.begin(), v.end(), [](std::int32_t x) { return x == 0; })) mon = "";
        std::string coef;
        if (c == QLaurent(1)) {
            coef = mon.empty() ? "1" : "";
        } else if (c == QLaurent(-1)) {
            coef = mon.empty() ? "-1" : "-";
        } else if (c.is_monomial()) {
            coef = c.str();
        } else {
            coef = "(" + c.str() + ")";
        }
        std::string t = coef + mon;
        if (!first) {
            if (t[0] == '-') s += " - " + t.substr(1);
            else s += " + " + t;
        } else {
            s += t;
        }
        first = false;
    }
    return s;
}

TorusElement commutator_quotient(const TorusElement& a, const TorusElement& b, const Rational& d) {
    TorusElement c = a * b - b * a;
    TorusElement r(pick(a, b));
    for (const auto& [v, x] : c.terms()) {
        QLaurent y;
        if (!x.divide_by_q_minus_qinv(d, y))
            throw NotDivisible("commutator coefficient " + x.str() + " not divisible by q^" + d.str() + " - q^-" +
                               d.str());
        r.add_term(v, y);
    }
    return r;
}

TorusElement binomial(const TorusPtr& t, const QLaurent& c, const LatticeVector& eta) {
    TorusElement e = TorusElement::constant(t, QLaurent(1));
    e.add_term(eta, c);
    return e;
}

bool try_right_divide(const TorusElement& p, const QLaurent& c, const LatticeVector& eta, TorusElement& out) {
    out = TorusElement(p.torus());
    if (p.is_zero()) return true;
    if (c.is_zero()) {
        out = p;
        return true;
    }
    const TorusForm& T = *p.torus();
    std::size_t j0 = eta.size();
    for (std::size_t j = 0; j < eta.size(); ++j)
        if (eta[j] != 0) {
            j0 = j;
            break;
        }
    if (j0 == eta.size()) {
        // dividing by the scalar 1 + c
        QLaurent den = QLaurent(1) + c;
        for (const auto& [v, x] : p.terms()) {
            QLaurent y;
            if (den.is_zero() || !x.divide_exact(den, y)) return false;
            out.add_term(v, y);
        }
        return true;
    }
    // group by residue class mod Z*eta: lambda = rep + t*eta with rep[j0] in [0, |eta[j0]|)
    const std::int32_t e = eta[j0];
    const std::int32_t ae = e < 0 ? -e : e;
    std::map<LatticeVector, std::map<std::int64_t, QLaurent>> classes;
    for (const auto& [v, x] : p.terms()) {
        std::int32_t r = ((v[j0] % ae) + ae) % ae;
        std::int64_t t = (static_cast<std::int64_t>(v[j0]) - r) / e;
        LatticeVector rep = lattice_add(v, eta, static_cast<std::int32_t>(-t));
        classes[rep][t] = x;
    }
    for (const auto& [rep, coeffs] : classes) {
        // p_t = r_t + r_{t-1} c q^{-(lambda_{t-1}, eta)}; (eta, eta) = 0 so the shift is constant
        const QLaurent step = c.shifted(-T.pair(rep, eta));
        const std::int64_t t0 = coeffs.begin()->first, t1 = coeffs.rbegin()->first;
        QLaurent prev;
        for (std::int64_t t = t0; t < t1; ++t) {
            auto it = coeffs.find(t);
            QLaurent pt = it == coeffs.end() ? QLaurent() : it->second;
            QLaurent rt = pt - prev * step;
            out.add_term(lattice_add(rep, eta, static_cast<std::int32_t>(t)), rt);
            prev = rt;
        }
        if (coeffs.rbegin()->second != prev * step) return false;
    }
    return true;
}

TorusElement right_divide(const TorusElement& p, const QLaurent& c, const LatticeVector& eta) {
    TorusElement r;
    if (!try_right_divide(p, c, eta, r))
        throw NotExactlyDivisible("not divisible by 1 + (" + c.str() + ")X_{" + p.torus()->render(eta) + "}");
    return r;
}

}  // namespace qcluster
