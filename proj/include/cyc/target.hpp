#pragma once

// Derived sequences sum_k coeff_k * f(scale_k * n + offset_k), with scale a
// power of two. Text form: "c(4n+3)-1/2c(2n)-c(2n+3)-1/2c(2n+4)".

#include "cyc/linrep.hpp"

#include <bit>
#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyc {

struct AffineTerm {
    Rational coeff;
    std::uint64_t scale = 1; // power of two
    std::uint64_t offset = 0;

    friend bool operator==(const AffineTerm&, const AffineTerm&) = default;
};

using Target = std::vector<AffineTerm>;

struct TargetSyntaxError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parses the tiny grammar  term (('+'|'-') term)*  where
///   term  := [coeff ['*']] 'c(' [scale] 'n' ['+' offset] ')'
///   coeff := integer | integer '/' integer
inline Target parse_target(std::string_view text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s.push_back(ch);
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw TargetSyntaxError("target '" + std::string(text) + "': " + why + " at offset " + std::to_string(pos));
    };
    auto read_uint = [&]() -> std::optional<std::uint64_t> {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (start == pos)
            return std::nullopt;
        return std::stoull(s.substr(start, pos - start));
    };
    Target out;
    if (s.empty())
        fail("empty expression");
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!out.empty()) {
            fail("expected '+' or '-'");
        }
        Rational coeff = 1;
        if (auto num = read_uint()) {
            coeff = from_u64(*num);
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                auto den = read_uint();
                if (!den || *den == 0)
                    fail("bad denominator");
                coeff /= from_u64(*den);
            }
            if (pos < s.size() && s[pos] == '*')
                ++pos;
        }
        if (s.compare(pos, 2, "c(") != 0)
            fail("expected 'c('");
        pos += 2;
        AffineTerm t;
        t.coeff = sign * coeff;
        t.scale = read_uint().value_or(1);
        if (pos >= s.size() || s[pos] != 'n')
            fail("expected 'n'");
        ++pos;
        if (pos < s.size() && s[pos] == '+') {
            ++pos;
            auto off = read_uint();
            if (!off)
                fail("expected offset");
            t.offset = *off;
        }
        if (pos >= s.size() || s[pos] != ')')
            fail("expected ')'");
        ++pos;
        if (t.scale == 0 || (t.scale & (t.scale - 1)) != 0)
            fail("scale must be a power of two");
        out.push_back(t);
    }
    return out;
}

inline std::string to_string(const Target& target)
{
    std::string s;
    for (const auto& t : target) {
        Rational mag = abs(t.coeff);
        if (!s.empty() || sgn(t.coeff) < 0)
            s += sgn(t.coeff) < 0 ? "-" : "+";
        if (mag != 1)
            s += mag.get_str();
        s += "c(";
        if (t.scale != 1)
            s += std::to_string(t.scale);
        s += "n";
        if (t.offset)
            s += "+" + std::to_string(t.offset);
        s += ")";
    }
    return s;
}

inline Rational evaluate_target(const Target& target, const std::function<Rational(std::uint64_t)>& f, std::uint64_t n)
{
    Rational acc;
    for (const auto& t : target)
        acc += t.coeff * f(t.scale * n + t.offset);
    return acc;
}

/// Representation of n -> f(scale * n + offset), scale = 2^m: the offset is
/// split as q * scale + r, handled by a suffix (r in m digits) and a shift by q.
inline LinearRepresentation affine_transform(const LinearRepresentation& rep, std::uint64_t scale, std::uint64_t offset)
{
    if (scale == 0 || (scale & (scale - 1)) != 0)
        throw std::invalid_argument("affine_transform: scale must be a power of two");
    const unsigned m = static_cast<unsigned>(std::countr_zero(scale));
    const std::uint64_t q = offset / scale, r = offset % scale;
    LinearRepresentation out = msd_complete(rep);
    if (m > 0) {
        Digits suffix(m);
        for (unsigned k = 0; k < m; ++k)
            suffix[k] = static_cast<Digit>((r >> (m - 1 - k)) & 1);
        out = suffix_transform(out, suffix);
    }
    if (q > 0)
        out = shift_transform(out, q);
    return out;
}

/// Unminimized block combination of the transformed terms.
inline LinearRepresentation target_representation(const Target& target, const LinearRepresentation& rep)
{
    std::vector<std::pair<Rational, LinearRepresentation>> terms;
    for (const auto& t : target)
        terms.emplace_back(t.coeff, affine_transform(rep, t.scale, t.offset));
    return linear_combine(terms);
}

} // namespace cyc
