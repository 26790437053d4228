#ifndef WGAB_HALFINT_HPP
#define WGAB_HALFINT_HPP

// Half-integers k/2, stored as the doubled integer. These carry all degrees
// and basis indices of the 1/2 Z-graded algebras.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rational.hpp"

namespace wgab {

struct HalfInt {
    std::int64_t doubled = 0;

    static constexpr HalfInt of_int(std::int64_t n) { return HalfInt{.doubled = 2 * n}; }
    static constexpr HalfInt of_doubled(std::int64_t d) { return HalfInt{.doubled = d}; }

    constexpr bool is_integral() const { return doubled % 2 == 0; }
    constexpr std::int64_t floor() const {
        // floor division by 2 for negative values as well
        return doubled >= 0 ? doubled / 2 : (doubled - 1) / 2;
    }
    constexpr std::int64_t as_int() const { return doubled / 2; }  // requires integral

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{.doubled = a.doubled + b.doubled}; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{.doubled = a.doubled - b.doubled}; }
    constexpr HalfInt operator-() const { return HalfInt{.doubled = -doubled}; }
    constexpr HalfInt& operator+=(HalfInt o) { doubled += o.doubled; return *this; }

    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

    Rational to_rational() const { return Rational(doubled, 2); }

    std::string str() const {
        if (is_integral()) return std::to_string(doubled / 2);
        return std::to_string(doubled) + "/2";
    }

    // Accepts "k", "k/2" (odd or even k), and reduced "p/q" with q | 2.
    static HalfInt parse(std::string_view s) {
        Rational r = Rational::parse(s);
        Rational d = r * Rational(2);
        if (!d.is_integer())
            throw std::invalid_argument("half-integer: '" + std::string(s) +
                                        "' is not a multiple of 1/2");
        if (!d.numerator().fits_slong_p())
            throw std::invalid_argument("half-integer: out of range");
        return HalfInt{.doubled = d.numerator().get_si()};
    }
};

}  // namespace wgab

#endif
