#pragma once

// Univariate polynomials over Q and matrix minimal polynomials.

#include "cyc/matrix.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace cyc {

class Polynomial {
public:
    Polynomial() = default;
    /// Coefficients from the constant term upward.
    explicit Polynomial(RationalVector coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static Polynomial monomial(std::size_t degree, Rational coeff = 1)
    {
        RationalVector c(degree + 1);
        c[degree] = std::move(coeff);
        return Polynomial(std::move(c));
    }

    /// prod (X - r) over the given roots (with multiplicity).
    static Polynomial from_roots(const std::vector<Rational>& roots)
    {
        Polynomial p{Rational(1)};
        for (const auto& r : roots)
            p = p * Polynomial{-r, Rational(1)};
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const RationalVector& coefficients() const { return c_; }
    Rational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    const Rational& leading() const { return c_.back(); }

    Polynomial monic() const
    {
        if (is_zero())
            return *this;
        Polynomial p = *this;
        Rational inv = 1 / leading();
        for (auto& x : p.c_)
            x *= inv;
        return p;
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        RationalVector c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = a.coefficient(i) + b.coefficient(i);
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b)
    {
        RationalVector c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = a.coefficient(i) - b.coefficient(i);
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        RationalVector c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }

    /// Quotient and remainder; b must be nonzero.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b)
    {
        if (b.is_zero())
            throw std::domain_error("polynomial division by zero");
        Polynomial r = a;
        if (a.degree() < b.degree())
            return {Polynomial{}, r};
        RationalVector q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
        while (!r.is_zero() && r.degree() >= b.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
            Rational f = r.leading() / b.leading();
            q[shift] = f;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                r.c_[i + shift] -= f * b.c_[i];
            r.trim();
        }
        return {Polynomial(std::move(q)), r};
    }

    /// Monic greatest common divisor.
    static Polynomial gcd(Polynomial a, Polynomial b)
    {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    static Polynomial lcm(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        return divmod(a * b, gcd(a, b)).first.monic();
    }

    Rational operator()(const Rational& x) const
    {
        Rational acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    /// p(M) by Horner's rule.
    RationalMatrix operator()(const RationalMatrix& m) const
    {
        if (!m.square())
            throw std::invalid_argument("polynomial of a non-square matrix");
        RationalMatrix acc(m.rows(), m.cols());
        const auto id = RationalMatrix::identity(m.rows());
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * m + *it * id;
        return acc;
    }

    /// e.g. "X^5 - 2*X^4 + 1/2*X - 3"
    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::string s;
        for (long k = degree(); k >= 0; --k) {
            const Rational& a = c_[static_cast<std::size_t>(k)];
            if (sgn(a) == 0)
                continue;
            Rational mag = abs(a);
            if (s.empty())
                s += sgn(a) < 0 ? "-" : "";
            else
                s += sgn(a) < 0 ? " - " : " + ";
            bool unit = mag == 1;
            if (!unit || k == 0)
                s += mag.get_str();
            if (k > 0) {
                if (!unit)
                    s += "*";
                s += "X";
                if (k > 1)
                    s += "^" + std::to_string(k);
            }
        }
        return s;
    }

private:
    void trim()
    {
        while (!c_.empty() && sgn(c_.back()) == 0)
            c_.pop_back();
    }

    RationalVector c_;
};

/// Monic minimal polynomial of a square matrix: the lcm over the standard
/// basis vectors of each vector's Krylov annihilator.
inline Polynomial minimal_polynomial(const RationalMatrix& m)
{
    if (!m.square())
        throw std::invalid_argument("minimal_polynomial: matrix must be square");
    const std::size_t n = m.rows();
    Polynomial result{Rational(1)};
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector x(n);
        x[i] = 1;
        RowBasis krylov(n);
        while (true) {
            if (auto coords = krylov.coordinates(x)) {
                // x = M^k e_i = sum coords[j] M^j e_i
                RationalVector c(coords->size() + 1);
                for (std::size_t j = 0; j < coords->size(); ++j)
                    c[j] = -(*coords)[j];
                c.back() = 1;
                result = Polynomial::lcm(result, Polynomial(std::move(c)));
                break;
            }
            krylov.insert(x);
            x = mul(m, x);
        }
    }
    return result;
}

} // namespace cyc
