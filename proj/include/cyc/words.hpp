#pragma once

// Infinite words (symbol streams), finite factors, and conjugacy-class
// canonicalization.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cyc {

using Symbol = std::uint8_t;

/// Thue-Morse: parity of the number of 1-bits of i.
constexpr Symbol tm_at(std::uint64_t i) noexcept { return static_cast<Symbol>(std::popcount(i) & 1); }

/// Characteristic word of the powers of two, indexed from 1.
inline Symbol p_at(std::uint64_t i)
{
    if (i == 0)
        throw std::out_of_range("p_at: index 0 is outside the domain (indexing starts at 1)");
    return std::has_single_bit(i) ? 1 : 0;
}

class SymbolStream {
public:
    using Generator = std::function<Symbol(std::uint64_t)>;

    SymbolStream(std::string name, unsigned alphabet_size, std::uint64_t domain_start, Generator gen)
        : name_(std::move(name)), alphabet_size_(alphabet_size), domain_start_(domain_start), gen_(std::move(gen))
    {
        if (alphabet_size_ == 0 || alphabet_size_ > 256)
            throw std::invalid_argument("stream alphabet must have 1..256 symbols");
        if (!gen_)
            throw std::invalid_argument("stream generator is empty");
    }

    const std::string& name() const { return name_; }
    unsigned alphabet_size() const { return alphabet_size_; }
    std::uint64_t domain_start() const { return domain_start_; }

    Symbol at(std::uint64_t i) const
    {
        if (i < domain_start_)
            throw std::out_of_range(name_ + ": index " + std::to_string(i) + " precedes domain start " +
                                    std::to_string(domain_start_));
        return gen_(i);
    }

    /// The first `count` symbols of the stream (positions domain_start ...).
    std::vector<Symbol> prefix(std::size_t count) const
    {
        std::vector<Symbol> out(count);
        for (std::size_t k = 0; k < count; ++k)
            out[k] = gen_(domain_start_ + k);
        return out;
    }

private:
    std::string name_;
    unsigned alphabet_size_;
    std::uint64_t domain_start_;
    Generator gen_;
};

inline SymbolStream thue_morse() { return SymbolStream("tm", 2, 0, [](std::uint64_t i) { return tm_at(i); }); }

inline SymbolStream powers_of_two_word()
{
    return SymbolStream("p", 2, 1, [](std::uint64_t i) { return p_at(i); });
}

/// A finite word over small-integer symbols.
class FactorWord {
public:
    FactorWord() = default;
    explicit FactorWord(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
    FactorWord(std::span<const Symbol> symbols) : symbols_(symbols.begin(), symbols.end()) {}

    /// Parses digits '0'..'9' (one symbol per character).
    static FactorWord from_string(std::string_view digits)
    {
        std::vector<Symbol> s;
        s.reserve(digits.size());
        for (char c : digits) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("FactorWord: non-digit symbol '" + std::string(1, c) + "'");
            s.push_back(static_cast<Symbol>(c - '0'));
        }
        return FactorWord(std::move(s));
    }

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    std::span<const Symbol> symbols() const { return symbols_; }

    std::string to_string() const
    {
        std::string s;
        s.reserve(symbols_.size());
        for (Symbol c : symbols_)
            s.push_back(c < 10 ? static_cast<char>('0' + c) : '?');
        return s;
    }

    /// Left rotation by k: symbols k..n-1 followed by 0..k-1.
    FactorWord rotated(std::size_t k) const
    {
        if (symbols_.empty())
            return *this;
        k %= symbols_.size();
        std::vector<Symbol> r(symbols_.size());
        std::rotate_copy(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(k), symbols_.end(), r.begin());
        return FactorWord(std::move(r));
    }

    friend bool operator==(const FactorWord&, const FactorWord&) = default;
    friend auto operator<=>(const FactorWord&, const FactorWord&) = default;

private:
    std::vector<Symbol> symbols_;
};

/// The n symbols at positions i .. i+n-1.
inline FactorWord factor(const SymbolStream& stream, std::uint64_t i, std::size_t n)
{
    if (i < stream.domain_start())
        throw std::out_of_range("factor: start precedes the stream's domain");
    std::vector<Symbol> s(n);
    for (std::size_t k = 0; k < n; ++k)
        s[k] = stream.at(i + k);
    return FactorWord(std::move(s));
}

/// Start index of the lexicographically least rotation of w, in O(|w|) time
/// and O(1) space (two-candidate elimination).
inline std::size_t least_rotation_index(std::span<const Symbol> w) noexcept
{
    const std::size_t n = w.size();
    if (n < 2)
        return 0;
    std::size_t i = 0, j = 1, k = 0;
    while (i < n && j < n && k < n) {
        std::size_t ai = i + k, aj = j + k;
        if (ai >= n)
            ai -= n;
        if (aj >= n)
            aj -= n;
        const Symbol a = w[ai], b = w[aj];
        if (a == b) {
            ++k;
            continue;
        }
        // every start in [i, i+k] (resp. [j, j+k]) is dominated
        if (a > b)
            i += k + 1;
        else
            j += k + 1;
        if (i == j)
            ++j;
        k = 0;
    }
    return std::min(i, j);
}

inline FactorWord canonical_rotation(const FactorWord& w) { return w.rotated(least_rotation_index(w.symbols())); }

/// True iff x is a rotation of y, decided by searching x inside yy.
inline bool cyclic_equal(const FactorWord& x, const FactorWord& y)
{
    if (x.size() != y.size())
        return false;
    if (x.empty())
        return true;
    std::vector<Symbol> yy(y.symbols().begin(), y.symbols().end());
    yy.insert(yy.end(), y.symbols().begin(), y.symbols().end());
    auto xs = x.symbols();
    return std::search(yy.begin(), yy.end(), xs.begin(), xs.end()) != yy.end();
}

/// A conjugacy class, stored by its canonical representative.
class CyclicClass {
public:
    explicit CyclicClass(const FactorWord& w) : canonical_(canonical_rotation(w)) {}
    const FactorWord& canonical() const { return canonical_; }
    bool contains(const FactorWord& w) const { return canonical_rotation(w) == canonical_; }
    friend bool operator==(const CyclicClass&, const CyclicClass&) = default;
    friend auto operator<=>(const CyclicClass&, const CyclicClass&) = default;

private:
    FactorWord canonical_;
};

} // namespace cyc
