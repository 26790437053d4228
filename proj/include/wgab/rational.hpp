#ifndef WGAB_RATIONAL_HPP
#define WGAB_RATIONAL_HPP

// Exact rational scalars. Thin value wrapper over GMP's mpq_class:
// always canonical (lowest terms, positive denominator), no implicit
// floating-point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wgab {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long num, long den) {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Strict "p" or "p/q" form, q > 0 after reduction. No decimals.
    static Rational parse(std::string_view s) {
        if (!looks_like_rational(s))
            throw std::invalid_argument("rational: cannot parse '" + std::string(s) +
                                        "' (expected p or p/q)");
        mpq_class q(std::string(s), 10);
        if (q.get_den() == 0) throw std::invalid_argument("rational: zero denominator");
        q.canonicalize();
        return Rational(q);
    }

    static bool looks_like_rational(std::string_view s) {
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        std::size_t digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
        if (digits == 0) return false;
        if (i == s.size()) return true;
        if (s[i] != '/') return false;
        ++i;
        digits = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
        return digits > 0 && i == s.size();
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("rational: inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

    // alpha^k for integer k (negative k needs alpha != 0).
    Rational pow(std::int64_t k) const {
        if (k == 0) return Rational(1);
        Rational base = k > 0 ? *this : inverse();
        std::uint64_t e = k > 0 ? static_cast<std::uint64_t>(k)
                                : static_cast<std::uint64_t>(-k);
        Rational acc(1);
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace wgab

#endif
