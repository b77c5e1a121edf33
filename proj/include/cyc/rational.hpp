#pragma once

// Exact rational scalars. Thin layer over GMP's mpq_class: canonical form
// (reduced, positive denominator) is maintained after every operation.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyc {

using Rational = mpq_class;
using Integer = mpz_class;

static_assert(sizeof(long) == 8, "GMP long conversions assume LP64");

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

inline Rational from_u64(std::uint64_t n) { return Rational(static_cast<unsigned long>(n)); }

/// Always "p/q", including "/1" for integers.
inline std::string to_pq_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// "p/q" or "p" (bare integer). Rejects zero denominators and junk.
inline Rational parse_rational(std::string_view text)
{
    auto valid_int = [](std::string_view s) {
        if (s.empty())
            return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };
    auto strip_plus = [](std::string_view s) {
        return std::string(s.size() && s[0] == '+' ? s.substr(1) : s);
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    Integer n(strip_plus(num)), d(strip_plus(den));
    if (d == 0)
        throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Human-readable: "p/q (decimal)" for non-integers, "p" for integers.
inline std::string to_display_string(const Rational& r)
{
    if (r.get_den() == 1)
        return r.get_num().get_str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", r.get_d());
    return r.get_str() + " (" + buf + ")";
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// 2^k as an exact rational.
inline Rational pow2(unsigned k)
{
    Integer z;
    mpz_ui_pow_ui(z.get_mpz_t(), 2, k);
    return Rational(z);
}

/// (-1)^k
inline Rational sign_pow(unsigned k) { return Rational(k % 2 ? -1 : 1); }

using RationalVector = std::vector<Rational>;

} // namespace cyc
