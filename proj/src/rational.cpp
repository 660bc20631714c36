#include "qcluster/rational.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace qcluster {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("rational add overflow");
    return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("rational mul overflow");
    return r;
}

}  // namespace checked

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
        num_ = checked::mul(num_, -1);
        den_ = checked::mul(den_, -1);
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = checked::mul(num_, -1);
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (den_ == o.den_) {
        *this = Rational(checked::add(num_, o.num_), den_);
        return *this;
    }
    std::int64_t g = std::gcd(den_, o.den_);
    std::int64_t a = checked::mul(num_, o.den_ / g);
    std::int64_t b = checked::mul(o.num_, den_ / g);
    *this = Rational(checked::add(a, b), checked::mul(den_, o.den_ / g));
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    if (num_ == 0 || o.num_ == 0) {
        num_ = 0;
        den_ = 1;
        return *this;
    }
    std::int64_t g1 = std::gcd(num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_, den_);
    std::int64_t n = checked::mul(num_ / g1, o.num_ / g2);
    std::int64_t d = checked::mul(den_ / g2, o.den_ / g1);
    num_ = n;
    den_ = d;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    Rational inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    if (inv.den_ < 0) {
        inv.num_ = checked::mul(inv.num_, -1);
        inv.den_ = checked::mul(inv.den_, -1);
    }
    return *this *= inv;
}

bool operator<(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return a.num_ < b.num_;
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l < r;
}

std::int64_t Rational::to_integer() const {
    if (den_ != 1) throw std::domain_error("rational " + str() + " is not an integer");
    return num_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty rational");
    auto slash = t.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            std::int64_t n = std::stoll(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return Rational(n);
        }
        std::string a = t.substr(0, slash), b = t.substr(slash + 1);
        std::int64_t n = std::stoll(a, &used);
        if (used != a.size()) throw std::invalid_argument(t);
        std::int64_t d = std::stoll(b, &used);
        if (used != b.size()) throw std::invalid_argument(t);
        return Rational(n, d);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace qcluster
