#pragma once

#include "cyc/verify.hpp"

#include <memory>

namespace cyc::test {

/// The published rank-7 representation of a0(n) = c(2n) - 2c(n).
inline LinearRepresentation published_a0()
{
    const std::size_t r = 7;
    RationalVector v(r), w(r);
    v[0] = 1;
    const long wv[] = {-1, -1, -2, 2, 4, 2, 6};
    for (std::size_t i = 0; i < r; ++i)
        w[i] = wv[i];
    RationalMatrix g0(r, r), g1(r, r);
    const std::size_t zero_target[] = {0, 2, 4, 5, 4, 3, 6};
    for (std::size_t i = 0; i < r; ++i)
        g0(i, zero_target[i]) = 1;
    g1(0, 1) = 1;
    g1(1, 3) = 1;
    g1(2, 4) = 1;
    g1(3, 4) = Rational(1, 2);
    g1(4, 4) = 1;
    g1(5, 6) = 1;
    g1(6, 4) = Rational(1, 2);
    return LinearRepresentation(std::move(v), std::move(g0), std::move(g1), std::move(w));
}

inline std::shared_ptr<const ComplexityOracle> tm_oracle()
{
    static auto oracle = std::make_shared<const ComplexityOracle>(thue_morse());
    return oracle;
}

/// c learned once per test binary, certified on 0..300.
inline const CertifiedRepresentation& learned_c()
{
    static const CertifiedRepresentation c = learn_certified(tm_oracle(), LearnOptions{}, 300);
    return c;
}

} // namespace cyc::test
