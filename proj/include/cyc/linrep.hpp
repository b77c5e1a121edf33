#pragma once

// Linear representations (v, gamma(0), gamma(1), w) of 2-regular sequences
// over exact rationals. A representation computes n -> v * gamma(z) * w where
// z is the most-significant-digit-first binary expansion of n (empty for 0).

#include "cyc/matrix.hpp"
#include "cyc/polynomial.hpp"

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyc {

using Digit = std::uint8_t;
using Digits = std::vector<Digit>;

/// msd-first binary expansion; empty for 0.
inline Digits binary_digits(std::uint64_t n)
{
    Digits d;
    while (n) {
        d.push_back(static_cast<Digit>(n & 1));
        n >>= 1;
    }
    return Digits(d.rbegin(), d.rend());
}

inline Digits parse_digits(std::string_view s)
{
    Digits d;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("binary digit string expected, got '" + std::string(s) + "'");
        d.push_back(static_cast<Digit>(c - '0'));
    }
    return d;
}

inline std::string digits_to_string(std::span<const Digit> d)
{
    std::string s;
    for (Digit x : d)
        s.push_back(static_cast<char>('0' + x));
    return s;
}

/// Integer value of an msd-first digit string.
inline std::uint64_t digits_value(std::span<const Digit> d)
{
    if (d.size() > 64) {
        for (std::size_t i = 0; i + 64 < d.size(); ++i)
            if (d[i])
                throw std::overflow_error("digit string value exceeds 64 bits");
    }
    std::uint64_t v = 0;
    for (Digit x : d)
        v = (v << 1) | x;
    return v;
}

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class LinearRepresentation {
public:
    LinearRepresentation() = default;

    LinearRepresentation(RationalVector v, RationalMatrix gamma0, RationalMatrix gamma1, RationalVector w)
        : v_(std::move(v)), gamma_{std::move(gamma0), std::move(gamma1)}, w_(std::move(w))
    {
        const std::size_t r = v_.size();
        for (const auto& g : gamma_)
            if (g.rows() != r || g.cols() != r)
                throw ShapeError("gamma matrices must be " + std::to_string(r) + "x" + std::to_string(r));
        if (w_.size() != r)
            throw ShapeError("w must have length " + std::to_string(r));
        leading_zero_invariant_ = mul(v_, gamma_[0]) == v_;
    }

    /// The zero sequence, as the degenerate rank-0 representation.
    static LinearRepresentation zero() { return LinearRepresentation({}, RationalMatrix(0, 0), RationalMatrix(0, 0), {}); }

    /// Rank-1 representation of a constant sequence.
    static LinearRepresentation constant(const Rational& c)
    {
        RationalMatrix one = RationalMatrix::identity(1);
        return LinearRepresentation({Rational(1)}, one, one, {c});
    }

    std::size_t rank() const { return v_.size(); }
    const RationalVector& v() const { return v_; }
    const RationalMatrix& gamma(Digit d) const { return gamma_.at(d); }
    const RationalVector& w() const { return w_; }

    /// v * gamma(0) == v, so prepending zeros never changes a value.
    bool leading_zero_invariant() const { return leading_zero_invariant_; }

    /// Raw series value on a digit string.
    Rational evaluate_digits(std::span<const Digit> z) const { return dot(apply(v_, z), w_); }

    /// v * gamma(z) for an msd-first digit string z.
    RationalVector apply(RationalVector u, std::span<const Digit> z) const
    {
        for (Digit d : z)
            u = mul(u, gamma_.at(d));
        return u;
    }

    /// Value at n using its canonical expansion (no leading zeros).
    Rational evaluate(std::uint64_t n) const { return evaluate_digits(binary_digits(n)); }

    /// Reversal (w^T, gamma^T, v^T): evaluates the digit string backwards.
    LinearRepresentation transposed() const
    {
        return LinearRepresentation(w_, gamma_[0].transposed(), gamma_[1].transposed(), v_);
    }

    friend bool operator==(const LinearRepresentation& a, const LinearRepresentation& b)
    {
        return a.v_ == b.v_ && a.gamma_[0] == b.gamma_[0] && a.gamma_[1] == b.gamma_[1] && a.w_ == b.w_;
    }

private:
    RationalVector v_;
    std::array<RationalMatrix, 2> gamma_;
    RationalVector w_;
    bool leading_zero_invariant_ = true;
};

inline Rational evaluate(const LinearRepresentation& rep, std::uint64_t n) { return rep.evaluate(n); }

/// Values at n = 0 .. count-1, sharing prefix products along the binary trie.
inline std::vector<Rational> evaluate_all(const LinearRepresentation& rep, std::uint64_t count)
{
    std::vector<Rational> out(count);
    if (count == 0)
        return out;
    out[0] = dot(rep.v(), rep.w());
    // depth-first over msd-first prefixes "1...", each prefix being n itself
    std::vector<std::pair<std::uint64_t, RationalVector>> stack;
    if (count > 1)
        stack.emplace_back(1, mul(rep.v(), rep.gamma(1)));
    while (!stack.empty()) {
        auto [n, u] = std::move(stack.back());
        stack.pop_back();
        out[n] = dot(u, rep.w());
        for (Digit d : {Digit{1}, Digit{0}}) {
            std::uint64_t child = 2 * n + d;
            if (child < count)
                stack.emplace_back(child, mul(u, rep.gamma(d)));
        }
    }
    return out;
}

/// An equivalent representation (on integers) satisfying v * gamma(0) == v.
/// Already-invariant inputs are returned unchanged; otherwise a start state
/// that absorbs leading zeros is added.
inline LinearRepresentation msd_complete(const LinearRepresentation& rep)
{
    if (rep.leading_zero_invariant())
        return rep;
    const std::size_t r = rep.rank();
    RationalVector v(r + 1), w(r + 1);
    RationalMatrix g0(r + 1, r + 1), g1(r + 1, r + 1);
    v[0] = 1;
    g0(0, 0) = 1;
    auto vg1 = mul(rep.v(), rep.gamma(1));
    for (std::size_t j = 0; j < r; ++j)
        g1(0, j + 1) = vg1[j];
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            g0(i + 1, j + 1) = rep.gamma(0)(i, j);
            g1(i + 1, j + 1) = rep.gamma(1)(i, j);
        }
    w[0] = dot(rep.v(), rep.w());
    for (std::size_t i = 0; i < r; ++i)
        w[i + 1] = rep.w()[i];
    return LinearRepresentation(std::move(v), std::move(g0), std::move(g1), std::move(w));
}

/// Block-diagonal direct sum computing sum c_i * f_i(n).
inline LinearRepresentation linear_combine(const std::vector<std::pair<Rational, LinearRepresentation>>& terms)
{
    if (terms.empty())
        throw std::invalid_argument("linear_combine: empty term list");
    std::size_t total = 0;
    for (const auto& [c, rep] : terms)
        total += rep.rank();
    RationalVector v(total), w(total);
    RationalMatrix g0(total, total), g1(total, total);
    std::size_t off = 0;
    for (const auto& [c, rep] : terms) {
        const std::size_t r = rep.rank();
        for (std::size_t i = 0; i < r; ++i) {
            v[off + i] = c * rep.v()[i];
            w[off + i] = rep.w()[i];
            for (std::size_t j = 0; j < r; ++j) {
                g0(off + i, off + j) = rep.gamma(0)(i, j);
                g1(off + i, off + j) = rep.gamma(1)(i, j);
            }
        }
        off += r;
    }
    return LinearRepresentation(std::move(v), std::move(g0), std::move(g1), std::move(w));
}

namespace detail {

/// Restricts a representation to the span of its reachable row vectors
/// {v * gamma(x)}, explored breadth-first (shorter strings first, digit 0
/// before 1).
inline LinearRepresentation forward_reduce(const LinearRepresentation& rep)
{
    const std::size_t r = rep.rank();
    RowBasis basis(r);
    std::vector<RationalVector> vecs;
    if (basis.insert(rep.v()))
        vecs.push_back(rep.v());
    for (std::size_t head = 0; head < vecs.size(); ++head)
        for (Digit d : {Digit{0}, Digit{1}}) {
            auto x = mul(vecs[head], rep.gamma(d));
            if (basis.insert(x))
                vecs.push_back(std::move(x));
        }
    const std::size_t k = vecs.size();
    if (k == 0)
        return LinearRepresentation::zero();
    auto coords = [&](const RationalVector& x) {
        auto c = basis.coordinates(x);
        if (!c)
            throw std::logic_error("forward_reduce: vector escaped its reachable span");
        c->resize(k);
        return *c;
    };
    RationalVector v = coords(rep.v());
    RationalMatrix g0(k, k), g1(k, k);
    RationalVector w(k);
    for (std::size_t i = 0; i < k; ++i) {
        auto c0 = coords(mul(vecs[i], rep.gamma(0)));
        auto c1 = coords(mul(vecs[i], rep.gamma(1)));
        for (std::size_t j = 0; j < k; ++j) {
            g0(i, j) = c0[j];
            g1(i, j) = c1[j];
        }
        w[i] = dot(vecs[i], rep.w());
    }
    return LinearRepresentation(std::move(v), std::move(g0), std::move(g1), std::move(w));
}

} // namespace detail

/// Minimal-rank equivalent representation: reachability reduction followed by
/// co-reachability reduction (the same reduction on the reversal).
inline LinearRepresentation minimize(const LinearRepresentation& rep)
{
    auto fwd = detail::forward_reduce(rep);
    auto both = detail::forward_reduce(fwd.transposed());
    if (both.rank() == 0)
        return LinearRepresentation::zero();
    return both.transposed();
}

/// True iff the two representations agree at every n >= 0.
inline bool equivalent(const LinearRepresentation& a, const LinearRepresentation& b)
{
    auto diff = linear_combine({{Rational(1), msd_complete(a)}, {Rational(-1), msd_complete(b)}});
    // the series is zero iff every reachable row vector is orthogonal to w;
    // the breadth-first basis spans all strings of length < rank
    RowBasis basis(diff.rank());
    std::vector<RationalVector> vecs;
    if (basis.insert(diff.v()))
        vecs.push_back(diff.v());
    for (std::size_t head = 0; head < vecs.size(); ++head) {
        if (sgn(dot(vecs[head], diff.w())) != 0)
            return false;
        for (Digit d : {Digit{0}, Digit{1}}) {
            auto x = mul(vecs[head], diff.gamma(d));
            if (basis.insert(x))
                vecs.push_back(std::move(x));
        }
    }
    return true;
}

/// n -> f(2^|s| * n + val(s)): same v and gamma, w replaced by gamma(s) * w.
inline LinearRepresentation suffix_transform(const LinearRepresentation& rep, std::span<const Digit> s)
{
    if (s.empty())
        throw std::invalid_argument("suffix_transform: empty suffix");
    RationalVector w = rep.w();
    for (auto it = s.rbegin(); it != s.rend(); ++it)
        w = mul(rep.gamma(*it), w);
    return LinearRepresentation(rep.v(), rep.gamma(0), rep.gamma(1), std::move(w));
}

/// n -> f(n + d). Built on the lsd-first reversal composed with a carry
/// transducer whose state is the part of the addend not yet absorbed
/// (0..d); the result is reversed back and minimized.
inline LinearRepresentation shift_transform(const LinearRepresentation& input, std::uint64_t d)
{
    if (d == 0)
        return input;
    const auto rep = msd_complete(input);
    const std::size_t r = rep.rank();
    if (d > 4096)
        throw std::invalid_argument("shift_transform: shift too large for the carry construction");
    const std::size_t states = static_cast<std::size_t>(d) + 1;
    const std::size_t R = r * states;
    const auto lsd = rep.transposed(); // reads the least significant digit first
    // lsd-first composite: initial row in block d, transitions block m -> (m+b)/2
    // emitting (m+b) mod 2, final column for block m = lsd-evaluation of m's digits
    RationalVector init(R);
    for (std::size_t j = 0; j < r; ++j)
        init[d * r + j] = lsd.v()[j];
    RationalMatrix t0(R, R), t1(R, R);
    for (std::size_t m = 0; m < states; ++m)
        for (Digit b : {Digit{0}, Digit{1}}) {
            const std::size_t sum = m + b;
            const std::size_t next = sum / 2;
            const Digit out = static_cast<Digit>(sum % 2);
            RationalMatrix& t = b ? t1 : t0;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    t(m * r + i, next * r + j) = lsd.gamma(out)(i, j);
        }
    RationalVector fin(R);
    for (std::size_t m = 0; m < states; ++m) {
        // remaining addend m is emitted lsd-first: gamma^T(bits of m) * v^T
        Digits bits = binary_digits(m);
        RationalVector col = lsd.w();
        for (Digit b : bits) // msd-first application on the column builds lsd-first reading
            col = mul(lsd.gamma(b), col);
        for (std::size_t j = 0; j < r; ++j)
            fin[m * r + j] = col[j];
    }
    LinearRepresentation composite(std::move(init), std::move(t0), std::move(t1), std::move(fin));
    return minimize(composite.transposed());
}

struct LearnOptions {
    std::size_t rank_cap = 64;
    /// Longest digit string whose value may be queried.
    std::size_t training_depth = 12;
    /// Suffixes (Hankel columns) are all digit strings up to this length.
    std::size_t suffix_depth = 5;
};

struct LearnError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LearnResult {
    LinearRepresentation rep;
    std::vector<Digits> basis_prefixes; // Hankel row basis, breadth-first order
    std::size_t queries = 0;            // distinct n at which the oracle was called
};

/// Builds a representation from values of f on digit strings: a prefix basis
/// is grown breadth-first (shorter first, digit 0 before 1) over Hankel rows
/// indexed by all suffixes of length <= suffix_depth, with exact rank tests.
/// The result reproduces f on every queried string and has v * gamma(0) == v.
inline LearnResult learn_from_oracle(const std::function<Rational(std::uint64_t)>& oracle, const LearnOptions& opt)
{
    if (opt.rank_cap == 0)
        throw std::invalid_argument("learn_from_oracle: rank_cap must be positive");
    if (opt.suffix_depth + 1 > opt.training_depth)
        throw std::invalid_argument("learn_from_oracle: training_depth must exceed suffix_depth");
    std::map<std::uint64_t, Rational> cache;
    auto f = [&](std::uint64_t n) -> const Rational& {
        auto it = cache.find(n);
        if (it == cache.end())
            it = cache.emplace(n, oracle(n)).first;
        return it->second;
    };

    std::vector<Digits> suffixes{{}};
    for (std::size_t head = 0; head < suffixes.size(); ++head) {
        if (suffixes[head].size() == opt.suffix_depth)
            continue;
        for (Digit d : {Digit{0}, Digit{1}}) {
            Digits s = suffixes[head];
            s.push_back(d);
            suffixes.push_back(std::move(s));
        }
    }
    auto row_of = [&](const Digits& p) {
        RationalVector row(suffixes.size());
        for (std::size_t k = 0; k < suffixes.size(); ++k) {
            Digits z = p;
            z.insert(z.end(), suffixes[k].begin(), suffixes[k].end());
            row[k] = f(digits_value(z));
        }
        return row;
    };

    RowBasis basis(suffixes.size());
    std::vector<Digits> prefixes;
    std::vector<std::array<RationalVector, 2>> transitions;
    if (basis.insert(row_of({})))
        prefixes.push_back({});
    if (prefixes.empty()) {
        LearnResult res{LinearRepresentation::zero(), {}, cache.size()};
        return res;
    }
    for (std::size_t head = 0; head < prefixes.size(); ++head) {
        std::array<RationalVector, 2> coords;
        for (Digit d : {Digit{0}, Digit{1}}) {
            Digits q = prefixes[head];
            q.push_back(d);
            if (q.size() + opt.suffix_depth > opt.training_depth)
                throw LearnError("prefix closure needs strings longer than training depth " +
                                 std::to_string(opt.training_depth) + " (prefix " + digits_to_string(q) + ")");
            auto row = row_of(q);
            if (auto c = basis.coordinates(row)) {
                coords[d] = std::move(*c);
            } else {
                basis.insert(row);
                prefixes.push_back(q);
                if (prefixes.size() > opt.rank_cap)
                    throw LearnError("rank exceeds cap " + std::to_string(opt.rank_cap));
                coords[d] = RationalVector(prefixes.size());
                coords[d].back() = 1;
            }
        }
        transitions.push_back(std::move(coords));
    }
    const std::size_t k = prefixes.size();
    RationalVector v(k), w(k);
    RationalMatrix g0(k, k), g1(k, k);
    v[0] = 1;
    for (std::size_t i = 0; i < k; ++i) {
        w[i] = f(digits_value(prefixes[i]));
        for (Digit d : {Digit{0}, Digit{1}}) {
            const auto& c = transitions[i][d];
            RationalMatrix& g = d ? g1 : g0;
            for (std::size_t j = 0; j < c.size(); ++j)
                g(i, j) = c[j];
        }
    }
    LinearRepresentation rep(std::move(v), std::move(g0), std::move(g1), std::move(w));
    if (!rep.leading_zero_invariant())
        throw LearnError("learned representation is not leading-zero invariant");

    // consistency: the representation must reproduce every queried value
    for (const auto& [n, value] : cache)
        if (rep.evaluate(n) != value)
            throw LearnError("closure inconsistent at n = " + std::to_string(n) + ": oracle " + value.get_str() +
                             ", learned " + rep.evaluate(n).get_str());
    return LearnResult{std::move(rep), std::move(prefixes), cache.size()};
}

/// Minimal polynomial of gamma(d).
inline Polynomial gamma_minimal_polynomial(const LinearRepresentation& rep, Digit d)
{
    return minimal_polynomial(rep.gamma(d));
}

} // namespace cyc
