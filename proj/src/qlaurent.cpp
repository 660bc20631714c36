#include "qcluster/qlaurent.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcluster {

namespace {

void normalize(std::vector<QLaurent::Term>& v) {
    std::sort(v.begin(), v.end(),
              [](const QLaurent::Term& a, const QLaurent::Term& b) { return a.first < b.first; });
    std::vector<QLaurent::Term> out;
    out.reserve(v.size());
    for (auto& t : v) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            if (!out.empty() && out.back().second.is_zero()) out.pop_back();
            out.push_back(t);
        }
    }
    if (!out.empty() && out.back().second.is_zero()) out.pop_back();
    v.swap(out);
}

}  // namespace

QLaurent::QLaurent(const Rational& c) {
    if (!c.is_zero()) terms_.emplace_back(Rational(0), c);
}

QLaurent QLaurent::monomial(const Rational& exponent, const Rational& coeff) {
    QLaurent r;
    if (!coeff.is_zero()) r.terms_.emplace_back(exponent, coeff);
    return r;
}

QLaurent QLaurent::q_minus_qinv(const Rational& e) {
    return monomial(e) - monomial(-e);
}

QLaurent QLaurent::q_integer(int n, const Rational& e) {
    // q^{(n-1)e} + q^{(n-3)e} + ... + q^{-(n-1)e}
    if (n < 0) return -q_integer(-n, e);
    QLaurent r;
    for (int j = 0; j < n; ++j) r.add_term(e * Rational(n - 1 - 2 * j), 1);
    normalize(r.terms_);
    return r;
}

QLaurent QLaurent::q_binomial(int n, int k, const Rational& e) {
    if (k < 0 || k > n) return QLaurent();
    QLaurent num(1), den(1);
    for (int j = 0; j < k; ++j) {
        num *= q_integer(n - j, e);
        den *= q_integer(j + 1, e);
    }
    QLaurent out;
    if (!num.divide_exact(den, out)) throw std::logic_error("q-binomial not polynomial");
    return out;
}

Rational QLaurent::coeff(const Rational& exponent) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, const Rational& e) { return t.first < e; });
    if (it != terms_.end() && it->first == exponent) return it->second;
    return Rational(0);
}

Rational QLaurent::min_exponent() const {
    if (terms_.empty()) throw std::logic_error("min_exponent of zero");
    return terms_.front().first;
}

Rational QLaurent::max_exponent() const {
    if (terms_.empty()) throw std::logic_error("max_exponent of zero");
    return terms_.back().first;
}

void QLaurent::add_term(const Rational& e, const Rational& c) {
    if (!c.is_zero()) terms_.emplace_back(e, c);
}

QLaurent QLaurent::operator-() const {
    QLaurent r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.cbegin();
    auto b = o.terms_.cbegin();
    while (a != terms_.cend() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.cend() && a->first < b->first)) {
            out.push_back(*a++);
        } else if (a == terms_.cend() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            Rational c = a->second + b->second;
            if (!c.is_zero()) out.emplace_back(a->first, c);
            ++a;
            ++b;
        }
    }
    terms_.swap(out);
    return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& o) { return *this += -o; }

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
    QLaurent r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) r.terms_.emplace_back(x.first + y.first, x.second * y.second);
    normalize(r.terms_);
    return r;
}

QLaurent& QLaurent::operator*=(const QLaurent& o) {
    *this = *this * o;
    return *this;
}

QLaurent QLaurent::shifted(const Rational& e, const Rational& c) const {
    QLaurent r;
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first + e, t.second * c);
    return r;
}

QLaurent QLaurent::substitute_power(const Rational& s) const {
    QLaurent r;
    for (const auto& t : terms_) r.terms_.emplace_back(t.first * s, t.second);
    normalize(r.terms_);
    return r;
}

bool QLaurent::divide_by_q_minus_qinv(const Rational& e, QLaurent& out) const {
    return divide_exact(q_minus_qinv(e), out);
}

bool QLaurent::divide_exact(const QLaurent& d, QLaurent& out) const {
    if (d.is_zero()) throw std::domain_error("QLaurent division by zero");
    out = QLaurent();
    if (is_zero()) return true;
    QLaurent rem = *this;
    const Rational lo = min_exponent() - d.min_exponent();
    const Rational de = d.max_exponent();
    const Rational dc = d.terms_.back().second;
    std::vector<Term> q;
    while (!rem.is_zero()) {
        Rational e = rem.max_exponent() - de;
        if (e < lo) return false;
        Rational c = rem.terms_.back().second / dc;
        q.emplace_back(e, c);
        rem -= d.shifted(e, c);
    }
    out.terms_ = std::move(q);
    normalize(out.terms_);
    return true;
}

bool operator<(const QLaurent& a, const QLaurent& b) {
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
        [](const QLaurent::Term& x, const QLaurent::Term& y) {
            if (x.first != y.first) return x.first < y.first;
            return x.second < y.second;
        });
}

std::string QLaurent::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->second;
        const Rational& e = it->first;
        if (!first) {
            s += c.sign() < 0 ? " - " : " + ";
            c = c.abs();
        } else if (c.sign() < 0) {
            s += "-";
            c = c.abs();
        }
        first = false;
        bool unit = c == Rational(1);
        if (e.is_zero()) {
            s += c.str();
            continue;
        }
        if (!unit) s += c.str();
        s += "q";
        if (e != Rational(1)) s += e.is_integer() && e.sign() > 0 ? "^" + e.str() : "^{" + e.str() + "}";
    }
    return s;
}

}  // namespace qcluster
