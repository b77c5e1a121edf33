#pragma once

// Brute-force oracle for cyclic complexity c_x(n) and subword complexity
// rho_x(n) of a symbol stream.
//
// Infinite words are truncated to a prefix chosen by geometric doubling. A
// prefix length L is accepted once the set of length-n factors of the first L
// symbols equals the set for the first 2L symbols.

#include "cyc/words.hpp"

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <exception>
#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

namespace cyc {

inline constexpr std::size_t default_prefix_cap = std::size_t{1} << 26;

struct StabilizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Polynomial hashing modulo the Mersenne prime 2^61 - 1. Hash equality is
// always confirmed by a symbol comparison, so collisions cost time only.
class RollingHash {
public:
    static constexpr std::uint64_t mod = (std::uint64_t{1} << 61) - 1;
    static constexpr std::uint64_t base = 1'000'003;

    explicit RollingHash(std::span<const Symbol> s) : prefix_(s.size() + 1), power_(s.size() + 1)
    {
        power_[0] = 1;
        for (std::size_t i = 0; i < s.size(); ++i) {
            prefix_[i + 1] = add(mulmod(prefix_[i], base), std::uint64_t{s[i]} + 1);
            power_[i + 1] = mulmod(power_[i], base);
        }
    }

    std::uint64_t range(std::size_t start, std::size_t len) const
    {
        return sub(prefix_[start + len], mulmod(prefix_[start], power_[len]));
    }

    /// Hash of the rotation of s[start, start+len) that begins at offset rot.
    std::uint64_t rotation(std::size_t start, std::size_t len, std::size_t rot) const
    {
        std::uint64_t head = range(start + rot, len - rot);
        std::uint64_t tail = range(start, rot);
        return add(mulmod(head, power_[rot]), tail);
    }

private:
    static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b)
    {
        unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        std::uint64_t lo = static_cast<std::uint64_t>(p & mod);
        std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
        std::uint64_t r = lo + hi;
        return r >= mod ? r - mod : r;
    }
    static std::uint64_t add(std::uint64_t a, std::uint64_t b)
    {
        std::uint64_t r = a + b;
        return r >= mod ? r - mod : r;
    }
    static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + mod - b; }

    std::vector<std::uint64_t> prefix_;
    std::vector<std::uint64_t> power_;
};

/// Offsets (ascending) of the first occurrence of each distinct length-n
/// window of `text`.
inline std::vector<std::size_t> first_occurrences(std::span<const Symbol> text, const RollingHash& hash,
                                                  std::size_t n)
{
    std::vector<std::size_t> firsts;
    if (n > text.size())
        return firsts;
    if (n == 0) {
        firsts.push_back(0);
        return firsts;
    }
    const std::size_t windows = text.size() - n + 1;
    auto h = [&](std::size_t i) { return static_cast<std::size_t>(hash.range(i, n)); };
    auto eq = [&](std::size_t a, std::size_t b) { return std::memcmp(text.data() + a, text.data() + b, n) == 0; };
    std::unordered_set<std::size_t, decltype(h), decltype(eq)> seen(2 * n + 16, h, eq);
    for (std::size_t i = 0; i < windows; ++i)
        if (seen.insert(i).second)
            firsts.push_back(i);
    return firsts;
}

/// Number of distinct conjugacy classes among the windows starting at `starts`.
inline std::size_t count_classes(std::span<const Symbol> text, const RollingHash& hash, std::size_t n,
                                 std::span<const std::size_t> starts)
{
    if (n == 0)
        return starts.empty() ? 0 : 1;
    struct Rot {
        std::size_t start;
        std::size_t rot;
    };
    auto h = [&](const Rot& r) { return static_cast<std::size_t>(hash.rotation(r.start, n, r.rot)); };
    auto eq = [&](const Rot& a, const Rot& b) {
        std::size_t ia = a.rot, ib = b.rot;
        for (std::size_t k = 0; k < n; ++k) {
            if (text[a.start + ia] != text[b.start + ib])
                return false;
            if (++ia == n)
                ia = 0;
            if (++ib == n)
                ib = 0;
        }
        return true;
    };
    std::unordered_set<Rot, decltype(h), decltype(eq)> classes(starts.size() + 16, h, eq);
    for (std::size_t s : starts) {
        std::size_t rot = least_rotation_index(text.subspan(s, n));
        classes.insert(Rot{s, rot});
    }
    return classes.size();
}

} // namespace detail

/// Distinct length-n factors among the first L symbols of the stream.
inline std::set<FactorWord> factor_set(const SymbolStream& stream, std::size_t n, std::size_t prefix_length)
{
    if (prefix_length < n)
        throw std::invalid_argument("factor_set: prefix length must be >= n");
    auto text = stream.prefix(prefix_length);
    detail::RollingHash hash(text);
    std::set<FactorWord> out;
    for (std::size_t s : detail::first_occurrences(text, hash, n))
        out.emplace(std::span<const Symbol>(text).subspan(s, n));
    return out;
}

/// Prefix length, the symbols, and the first-occurrence offsets of the
/// length-n factors, certified stable under one doubling.
struct StablePrefix {
    std::size_t length = 0;
    std::vector<Symbol> text; // the first 2*length symbols
    std::vector<std::size_t> starts;
};

inline StablePrefix stable_prefix(const SymbolStream& stream, std::size_t n, std::size_t cap = default_prefix_cap)
{
    std::size_t len = std::max<std::size_t>(2 * n, 64);
    while (2 * len <= cap) {
        StablePrefix p;
        p.length = len;
        p.text = stream.prefix(2 * len);
        detail::RollingHash hash(p.text);
        auto all = detail::first_occurrences(p.text, hash, n);
        // first occurrences are ascending, so those inside the first `len`
        // symbols form a prefix of the list
        std::size_t inside = 0;
        while (inside < all.size() && all[inside] + n <= len)
            ++inside;
        if (inside == all.size()) {
            p.starts = std::move(all);
            return p;
        }
        len *= 2;
    }
    throw StabilizationError("factor set of length " + std::to_string(n) + " in stream '" + stream.name() +
                             "' did not stabilize within " + std::to_string(cap) + " symbols");
}

inline std::size_t stabilized_prefix_length(const SymbolStream& stream, std::size_t n,
                                            std::size_t cap = default_prefix_cap)
{
    return stable_prefix(stream, n, cap).length;
}

inline std::size_t subword_complexity(const SymbolStream& stream, std::size_t n, std::size_t cap = default_prefix_cap)
{
    return stable_prefix(stream, n, cap).starts.size();
}

inline std::size_t cyclic_complexity(const SymbolStream& stream, std::size_t n, std::size_t cap = default_prefix_cap)
{
    auto p = stable_prefix(stream, n, cap);
    detail::RollingHash hash(p.text);
    return detail::count_classes(p.text, hash, n, p.starts);
}

/// Memoizing wrapper around the brute-force oracle. Safe for concurrent use.
class ComplexityOracle {
public:
    explicit ComplexityOracle(SymbolStream stream, std::size_t cap = default_prefix_cap)
        : stream_(std::move(stream)), cap_(cap)
    {
    }

    const SymbolStream& stream() const { return stream_; }

    std::size_t cyclic(std::size_t n) const { return lookup(cyclic_cache_, n, true); }
    std::size_t subword(std::size_t n) const { return lookup(subword_cache_, n, false); }

    /// c(from..to) computed on up to `jobs` threads; the result is indexed
    /// by n - from and does not depend on the thread count.
    std::vector<std::size_t> cyclic_range(std::size_t from, std::size_t to, unsigned jobs = 1) const
    {
        return range(from, to, jobs, true);
    }
    std::vector<std::size_t> subword_range(std::size_t from, std::size_t to, unsigned jobs = 1) const
    {
        return range(from, to, jobs, false);
    }

private:
    std::vector<std::size_t> range(std::size_t from, std::size_t to, unsigned jobs, bool cyc) const
    {
        if (from > to)
            return {};
        std::vector<std::size_t> out(to - from + 1);
        auto& cache = cyc ? cyclic_cache_ : subword_cache_;
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto work = [&] {
            // larger n cost more, so hand them out first
            for (std::size_t k; (k = next.fetch_add(1)) < out.size();) {
                std::size_t n = to - k;
                try {
                    out[n - from] = lookup(cache, n, cyc);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = out.size();
                }
            }
        };
        jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::size_t>(out.size(), 256))));
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < jobs; ++t)
            pool.emplace_back(work);
        work();
        for (auto& th : pool)
            th.join();
        if (error)
            std::rethrow_exception(error);
        return out;
    }

    std::size_t lookup(std::map<std::size_t, std::size_t>& cache, std::size_t n, bool cyc) const
    {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache.find(n); it != cache.end())
                return it->second;
        }
        std::size_t value = cyc ? cyclic_complexity(stream_, n, cap_) : subword_complexity(stream_, n, cap_);
        std::lock_guard lock(mutex_);
        cache.emplace(n, value);
        return value;
    }

    SymbolStream stream_;
    std::size_t cap_;
    mutable std::mutex mutex_;
    mutable std::map<std::size_t, std::size_t> cyclic_cache_;
    mutable std::map<std::size_t, std::size_t> subword_cache_;
};

} // namespace cyc
