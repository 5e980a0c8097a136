#pragma once

// Exact rational arithmetic on arbitrary-precision integers.
// Every quantity in this project is a rational number; there is no
// floating point anywhere and no square roots (comparisons that would
// need them are done on squared values instead).

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>

namespace nbox {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}  // NOLINT: implicit on purpose
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    // Accepts "p", "-p", "p/q" with optional leading sign on p.
    static Rational parse(const std::string& s) {
        auto bad = [&] { throw std::invalid_argument("rational parse error: '" + s + "'"); };
        if (s.empty()) bad();
        auto slash = s.find('/');
        std::string ns = (slash == std::string::npos) ? s : s.substr(0, slash);
        std::string ds = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
        if (ns.empty() || ds.empty()) bad();
        auto check_digits = [&](const std::string& t, bool sign_ok) {
            std::size_t i = 0;
            if (sign_ok && (t[0] == '-' || t[0] == '+')) i = 1;
            if (i >= t.size()) bad();
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') bad();
        };
        check_digits(ns, true);
        check_digits(ds, false);
        if (ns[0] == '+') ns.erase(0, 1);  // cpp_int rejects an explicit plus
        return Rational(BigInt(ns), BigInt(ds));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    // Largest integer <= *this.
    BigInt floor() const {
        BigInt q = num_ / den_;
        if (num_ < 0 && q * den_ != num_) --q;
        return q;
    }
    BigInt ceil() const {
        BigInt q = num_ / den_;
        if (num_ > 0 && q * den_ != num_) ++q;
        return q;
    }
    // Nearest integer, ties toward +infinity (only used to seed searches).
    BigInt round() const { return (*this + Rational(1, 2)).floor(); }

private:
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;  // always > 0, gcd(num_, den_) == 1
};

}  // namespace nbox
