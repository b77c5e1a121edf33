#pragma once

// Mechanical checks of the identities, bounds, and exceptional-set
// characterizations of the Thue-Morse cyclic complexity c(n).
//
// Every check takes an Evaluator for c, so the same code runs against the
// brute-force oracle (slow, trusted) or a certified representation (fast).
// Inequalities are compared exactly, e.g. 3c(n) >= 4n - 12.

#include "cyc/automata.hpp"
#include "cyc/cyclic.hpp"
#include "cyc/linrep.hpp"
#include "cyc/target.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cyc {

// ---------------------------------------------------------------------------
// Exceptional sets

enum class SetId { P2, A, B, D, J, J4p3, J2p3, J2m5 };

inline SetId parse_set_id(std::string_view name)
{
    if (name == "P2")
        return SetId::P2;
    if (name == "A")
        return SetId::A;
    if (name == "B")
        return SetId::B;
    if (name == "D")
        return SetId::D;
    if (name == "J")
        return SetId::J;
    if (name == "4J+3")
        return SetId::J4p3;
    if (name == "2J+3")
        return SetId::J2p3;
    if (name == "2J-5")
        return SetId::J2m5;
    throw std::invalid_argument("unknown set id '" + std::string(name) + "' (expected P2, A, B, D, J, 4J+3, 2J+3, 2J-5)");
}

namespace detail {
inline bool is_pow2(std::uint64_t n) { return std::has_single_bit(n); }

// n = m * 2^j with m odd and m - 1 = 2^e, e odd and >= 3
inline bool in_j(std::uint64_t n)
{
    if (n == 0)
        return false;
    std::uint64_t m = n >> std::countr_zero(n);
    if (m < 9 || !is_pow2(m - 1))
        return false;
    return std::countr_zero(m - 1) % 2 == 1;
}
} // namespace detail

inline bool in_set(SetId id, std::uint64_t n)
{
    using detail::in_j;
    using detail::is_pow2;
    switch (id) {
    case SetId::P2:
        return is_pow2(n);
    case SetId::A: // 2^k - 1, k >= 1
        return n >= 1 && (n & (n + 1)) == 0;
    case SetId::B: // 2^k + 1, k >= 2
        return n >= 5 && is_pow2(n - 1);
    case SetId::D: // 12 * 2^k - 3, k >= 0
        return n >= 9 && (n + 3) % 12 == 0 && is_pow2((n + 3) / 12);
    case SetId::J:
        return in_j(n);
    case SetId::J4p3:
        return n >= 3 && (n - 3) % 4 == 0 && in_j((n - 3) / 4);
    case SetId::J2p3:
        return n >= 3 && (n - 3) % 2 == 0 && in_j((n - 3) / 2);
    case SetId::J2m5:
        return (n + 5) % 2 == 0 && in_j((n + 5) / 2);
    }
    return false;
}

inline bool in_set(std::string_view name, std::uint64_t n) { return in_set(parse_set_id(name), n); }

// ---------------------------------------------------------------------------
// Evaluators for c(n)

class Evaluator {
public:
    virtual ~Evaluator() = default;
    virtual std::string description() const = 0;
    virtual Rational at(std::uint64_t n) const = 0;
    /// c(0) .. c(count-1)
    virtual std::vector<Rational> table(std::uint64_t count) const
    {
        std::vector<Rational> out;
        out.reserve(count);
        for (std::uint64_t n = 0; n < count; ++n)
            out.push_back(at(n));
        return out;
    }
};

using EvaluatorPtr = std::shared_ptr<const Evaluator>;

class OracleEvaluator : public Evaluator {
public:
    explicit OracleEvaluator(std::shared_ptr<const ComplexityOracle> oracle, unsigned jobs = 1)
        : oracle_(std::move(oracle)), jobs_(jobs)
    {
    }
    std::string description() const override { return "brute:" + oracle_->stream().name(); }
    Rational at(std::uint64_t n) const override { return from_u64(oracle_->cyclic(n)); }
    std::vector<Rational> table(std::uint64_t count) const override
    {
        std::vector<Rational> out;
        if (count == 0)
            return out;
        out.reserve(count);
        for (auto v : oracle_->cyclic_range(0, count - 1, jobs_))
            out.push_back(from_u64(v));
        return out;
    }

private:
    std::shared_ptr<const ComplexityOracle> oracle_;
    unsigned jobs_;
};

class RepresentationEvaluator : public Evaluator {
public:
    explicit RepresentationEvaluator(LinearRepresentation rep, std::string label = "rep")
        : rep_(std::move(rep)), label_(std::move(label))
    {
    }
    std::string description() const override
    {
        return label_ + " (rank " + std::to_string(rep_.rank()) + ")";
    }
    const LinearRepresentation& representation() const { return rep_; }

    Rational at(std::uint64_t n) const override
    {
        {
            std::lock_guard lock(mutex_);
            if (n < cache_.size())
                return cache_[n];
        }
        return rep_.evaluate(n);
    }

    std::vector<Rational> table(std::uint64_t count) const override
    {
        std::lock_guard lock(mutex_);
        if (cache_.size() < count)
            cache_ = evaluate_all(rep_, count);
        return std::vector<Rational>(cache_.begin(), cache_.begin() + static_cast<std::ptrdiff_t>(count));
    }

private:
    LinearRepresentation rep_;
    std::string label_;
    mutable std::mutex mutex_;
    mutable std::vector<Rational> cache_;
};

class DfaoEvaluator : public Evaluator {
public:
    explicit DfaoEvaluator(Dfao d, std::string label = "dfao") : d_(std::move(d)), label_(std::move(label)) {}
    std::string description() const override
    {
        return label_ + " (" + std::to_string(d_.state_count()) + " states)";
    }
    Rational at(std::uint64_t n) const override { return d_.evaluate(n); }

private:
    Dfao d_;
    std::string label_;
};

/// Trusted evaluator for n <= trusted_limit, fast evaluator beyond.
class HybridEvaluator : public Evaluator {
public:
    HybridEvaluator(EvaluatorPtr trusted, EvaluatorPtr fast, std::uint64_t trusted_limit)
        : trusted_(std::move(trusted)), fast_(std::move(fast)), limit_(trusted_limit)
    {
    }
    std::string description() const override
    {
        return trusted_->description() + " for n <= " + std::to_string(limit_) + ", " + fast_->description() +
               " beyond";
    }
    Rational at(std::uint64_t n) const override { return n <= limit_ ? trusted_->at(n) : fast_->at(n); }
    std::vector<Rational> table(std::uint64_t count) const override
    {
        auto out = fast_->table(count);
        auto head = trusted_->table(std::min<std::uint64_t>(count, limit_ + 1));
        std::move(head.begin(), head.end(), out.begin());
        return out;
    }

private:
    EvaluatorPtr trusted_, fast_;
    std::uint64_t limit_;
};

// ---------------------------------------------------------------------------
// Reports

struct VerificationReport {
    std::string id;
    std::string statement;
    std::string range;
    std::string evaluator;
    bool passed = true;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::vector<std::string> counterexamples; // first few failures, verbatim
    std::optional<std::int64_t> stated_threshold;
    std::optional<std::int64_t> detected_threshold;
    std::vector<std::string> notes;

    static constexpr std::size_t max_listed = 20;

    void check(bool ok, const std::function<std::string()>& describe)
    {
        ++checked;
        if (ok)
            return;
        passed = false;
        ++failures;
        if (counterexamples.size() < max_listed)
            counterexamples.push_back(describe());
    }
};

using SuiteReport = std::vector<VerificationReport>;

inline bool all_passed(const SuiteReport& r)
{
    return std::all_of(r.begin(), r.end(), [](const auto& c) { return c.passed; });
}

inline std::string n_str(std::uint64_t n) { return std::to_string(n); }

/// Compares a fast evaluator against a trusted one on 0..n_max.
inline VerificationReport certify(const Evaluator& fast, const Evaluator& trusted, std::uint64_t n_max)
{
    VerificationReport r;
    r.id = "certify";
    r.statement = "fast evaluator agrees with trusted evaluator";
    r.range = "0 <= n <= " + n_str(n_max);
    r.evaluator = fast.description() + " vs " + trusted.description();
    auto a = fast.table(n_max + 1);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        Rational b = trusted.at(n);
        r.check(a[n] == b, [&] { return "n=" + n_str(n) + ": " + a[n].get_str() + " vs " + b.get_str(); });
    }
    return r;
}

/// The complexity function of a stream learned from its oracle, minimized,
/// and compared with the oracle on 0..certified_max.
struct CertifiedRepresentation {
    LinearRepresentation rep;
    VerificationReport certificate;
    std::size_t learned_rank = 0;
    std::size_t queries = 0;
};

inline CertifiedRepresentation learn_certified(const std::shared_ptr<const ComplexityOracle>& oracle,
                                               const LearnOptions& opt, std::uint64_t certified_max = 300,
                                               unsigned jobs = 1)
{
    auto learned = learn_from_oracle([&](std::uint64_t n) { return from_u64(oracle->cyclic(n)); }, opt);
    auto rep = minimize(learned.rep);
    RepresentationEvaluator fast(rep, "learned " + oracle->stream().name());
    OracleEvaluator trusted(oracle, jobs);
    auto cert = certify(fast, trusted, certified_max);
    return {std::move(rep), std::move(cert), learned.rep.rank(), learned.queries};
}

// ---------------------------------------------------------------------------
// Closed forms over exponential bases

/// One basis term 2^(pi*i + pj*j) * (-1)^(si*i + sj*j).
struct ExpTerm {
    unsigned pow2_i = 0, pow2_j = 0;
    unsigned sign_i = 0, sign_j = 0;
    std::string label;

    Rational operator()(std::int64_t i, std::int64_t j) const
    {
        std::int64_t e = static_cast<std::int64_t>(pow2_i) * i + static_cast<std::int64_t>(pow2_j) * j;
        if (e < 0)
            throw std::domain_error("closed form term " + label + " has a negative exponent");
        Rational v = pow2(static_cast<unsigned>(e));
        if ((sign_i * i + sign_j * j) % 2 != 0)
            v = -v;
        return v;
    }
    friend bool operator==(const ExpTerm& a, const ExpTerm& b)
    {
        return a.pow2_i == b.pow2_i && a.pow2_j == b.pow2_j && a.sign_i == b.sign_i && a.sign_j == b.sign_j;
    }
};

namespace basis {
inline ExpTerm pow_2i_j() { return {2, 1, 0, 0, "2^(2i+j)"}; }
inline ExpTerm pow_j() { return {0, 1, 0, 0, "2^j"}; }
inline ExpTerm pow_2i() { return {2, 0, 0, 0, "2^(2i)"}; }
inline ExpTerm sign_j() { return {0, 0, 0, 1, "(-1)^j"}; }
inline ExpTerm pow_2i_sign_j() { return {2, 0, 0, 1, "2^(2i)(-1)^j"}; }
inline ExpTerm one() { return {0, 0, 0, 0, "1"}; }
// single-parameter terms use i as the parameter k
inline ExpTerm pow_k() { return {1, 0, 0, 0, "2^k"}; }
inline ExpTerm sign_k() { return {0, 0, 1, 0, "(-1)^k"}; }

/// Two-parameter basis for strings 1 0^(2i) 1 0^j and relatives.
inline std::vector<ExpTerm> two_parameter()
{
    return {pow_2i_j(), pow_j(), pow_2i(), one(), pow_2i_sign_j(), sign_j()};
}
inline std::vector<ExpTerm> single_parameter() { return {pow_k(), sign_k(), one()}; }
} // namespace basis

struct ClosedForm {
    std::vector<ExpTerm> basis;
    RationalVector coeffs;

    Rational operator()(std::int64_t i, std::int64_t j = 0) const
    {
        Rational v;
        for (std::size_t t = 0; t < basis.size(); ++t)
            if (sgn(coeffs[t]) != 0)
                v += coeffs[t] * basis[t](i, j);
        return v;
    }

    std::string to_string() const
    {
        std::string s;
        for (std::size_t t = 0; t < basis.size(); ++t) {
            if (sgn(coeffs[t]) == 0)
                continue;
            if (!s.empty())
                s += sgn(coeffs[t]) < 0 ? " - " : " + ";
            else if (sgn(coeffs[t]) < 0)
                s += "-";
            s += Rational(abs(coeffs[t])).get_str();
            if (basis[t].label != "1")
                s += "*" + basis[t].label;
        }
        return s.empty() ? "0" : s;
    }
};

/// A digit-string template such as "1 0^{2i} 1 0^{j}": space-separated
/// pieces, each a literal digit string or a digit repeated a number of times
/// linear in i and j.
class DigitPattern {
public:
    explicit DigitPattern(std::string_view text) : text_(text)
    {
        std::size_t pos = 0;
        while (pos < text.size()) {
            while (pos < text.size() && text[pos] == ' ')
                ++pos;
            if (pos == text.size())
                break;
            std::size_t end = text.find(' ', pos);
            std::string_view tok = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
            pos = end == std::string_view::npos ? text.size() : end;
            if (auto caret = tok.find("^{"); caret != std::string_view::npos) {
                if (caret != 1 || tok.back() != '}' || (tok[0] != '0' && tok[0] != '1'))
                    throw std::invalid_argument("bad pattern piece '" + std::string(tok) + "'");
                Piece p;
                p.digit = static_cast<Digit>(tok[0] - '0');
                parse_linear(tok.substr(3, tok.size() - 4), p);
                pieces_.push_back(p);
            } else {
                Piece p;
                p.literal = parse_digits(tok);
                pieces_.push_back(p);
            }
        }
        if (pieces_.empty())
            throw std::invalid_argument("empty digit pattern");
    }

    const std::string& text() const { return text_; }

    /// nullopt when some repeat count is negative.
    std::optional<Digits> expand(std::int64_t i, std::int64_t j) const
    {
        Digits out;
        for (const auto& p : pieces_) {
            if (!p.literal.empty()) {
                out.insert(out.end(), p.literal.begin(), p.literal.end());
                continue;
            }
            std::int64_t count = p.ci * i + p.cj * j + p.c0;
            if (count < 0)
                return std::nullopt;
            out.insert(out.end(), static_cast<std::size_t>(count), p.digit);
        }
        return out;
    }

private:
    struct Piece {
        Digits literal;
        Digit digit = 0;
        std::int64_t ci = 0, cj = 0, c0 = 0;
    };

    static void parse_linear(std::string_view e, Piece& p)
    {
        std::size_t pos = 0;
        if (e.empty())
            throw std::invalid_argument("empty repeat count");
        while (pos < e.size()) {
            std::int64_t sign = 1;
            if (e[pos] == '+' || e[pos] == '-') {
                sign = e[pos] == '-' ? -1 : 1;
                ++pos;
            }
            std::int64_t coef = 0;
            bool digits = false;
            while (pos < e.size() && e[pos] >= '0' && e[pos] <= '9') {
                coef = coef * 10 + (e[pos] - '0');
                digits = true;
                ++pos;
            }
            if (pos < e.size() && (e[pos] == 'i' || e[pos] == 'j')) {
                (e[pos] == 'i' ? p.ci : p.cj) += sign * (digits ? coef : 1);
                ++pos;
            } else if (digits) {
                p.c0 += sign * coef;
            } else {
                throw std::invalid_argument("bad repeat count '" + std::string(e) + "'");
            }
        }
    }

    std::string text_;
    std::vector<Piece> pieces_;
};

using ParamPoint = std::pair<std::int64_t, std::int64_t>;

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fits exact coefficients so that the basis reproduces rep on the pattern at
/// the sample points (square system), then confirms every holdout point.
inline ClosedForm fit_closed_form(const LinearRepresentation& rep, const DigitPattern& pattern,
                                  const std::vector<ExpTerm>& terms, const std::vector<ParamPoint>& samples,
                                  const std::vector<ParamPoint>& holdouts)
{
    if (samples.size() != terms.size())
        throw std::invalid_argument("fit_closed_form: need exactly one sample per basis term");
    auto value_at = [&](const ParamPoint& p) {
        auto z = pattern.expand(p.first, p.second);
        if (!z)
            throw std::invalid_argument("fit_closed_form: pattern undefined at (" + std::to_string(p.first) + "," +
                                        std::to_string(p.second) + ")");
        return rep.evaluate_digits(*z);
    };
    const std::size_t k = terms.size();
    RationalMatrix a(k, k);
    RationalVector b(k);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c)
            a(r, c) = terms[c](samples[r].first, samples[r].second);
        b[r] = value_at(samples[r]);
    }
    ClosedForm form{terms, solve(a, b)};
    for (const auto& h : holdouts) {
        Rational expect = value_at(h);
        Rational got = form(h.first, h.second);
        if (expect != got)
            throw FitError("closed form " + form.to_string() + " misses holdout (" + std::to_string(h.first) + "," +
                           std::to_string(h.second) + "): representation " + expect.get_str() + ", formula " +
                           got.get_str());
    }
    return form;
}

/// Picks, in grid order (i outer, j inner), the first points whose basis rows
/// are independent until the system is square.
inline std::vector<ParamPoint> choose_samples(const std::vector<ExpTerm>& terms, std::int64_t i_min,
                                              std::int64_t j_min, std::int64_t max_param)
{
    RowBasis rows(terms.size());
    std::vector<ParamPoint> out;
    for (std::int64_t i = i_min; i <= max_param && out.size() < terms.size(); ++i)
        for (std::int64_t j = j_min; j <= max_param && out.size() < terms.size(); ++j) {
            RationalVector row;
            for (const auto& t : terms)
                row.push_back(t(i, j));
            if (rows.insert(row))
                out.push_back({i, j});
        }
    if (out.size() < terms.size()) {
        RationalMatrix m(out.size(), terms.size());
        throw SingularSystem("no nonsingular sample set within the parameter grid", m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms in one parameter k: c(scale * 2^k + offset)

struct PowerFamilyClaim {
    std::string id;
    std::string statement;
    std::uint64_t scale;
    std::int64_t offset;
    ClosedForm form; // in k
    std::int64_t stated_min_k;
    /// Start of the range actually asserted; differs from stated_min_k only
    /// where the stated range contradicts small values of c.
    std::int64_t verified_min_k;
};

inline std::vector<PowerFamilyClaim> power_family_claims()
{
    auto f = [](Rational a, Rational s, Rational c) {
        return ClosedForm{basis::single_parameter(), {std::move(a), std::move(s), std::move(c)}};
    };
    auto q = [](long p, long d = 1) { return make_rational(p, d); };
    return {
        {"c(2^k)", "c(2^k) = 2*2^k - 4", 1, 0, f(q(2), q(0), q(-4)), 2, 2},
        {"c(2^k+3)", "c(2^k+3) = 5/3*2^k - 2/3*(-1)^k + 2", 1, 3, f(q(5, 3), q(-2, 3), q(2)), 2, 2},
        {"c(2^k+1)", "c(2^k+1) = 4/3*2^k + 2/3*(-1)^k - 2", 1, 1, f(q(4, 3), q(2, 3), q(-2)), 2, 2},
        {"c(2^k-3)", "c(2^k-3) = 5/3*2^k + 1/3*(-1)^k - 5", 1, -3, f(q(5, 3), q(1, 3), q(-5)), 5, 5},
        {"c(2^k-1)", "c(2^k-1) = 4/3*2^k - 1/3*(-1)^k - 3", 1, -1, f(q(4, 3), q(-1, 3), q(-3)), 2, 2},
        {"c(2^k-5)", "c(2^k-5) = 3/2*2^k + (-1)^k - 7", 1, -5, f(q(3, 2), q(1), q(-7)), 5, 5},
        {"c(2^k-7)", "c(2^k-7) = 3/2*2^k - (-1)^k - 9", 1, -7, f(q(3, 2), q(-1), q(-9)), 3, 5},
        {"c(12*2^k-3)", "c(12*2^k-3) = 56/3*2^k - 2/3*(-1)^k - 10", 12, -3, f(q(56, 3), q(-2, 3), q(-10)), 0, 0},
    };
}

/// Closed forms for c at scale*2^k + offset; each claim is asserted on
/// verified_min_k <= k <= k_max, and the smallest k after which it never fails
/// is reported alongside the stated one.
inline SuiteReport check_power_families(const Evaluator& c, std::int64_t k_max)
{
    if (k_max < 6 || k_max > 58)
        throw std::invalid_argument("check_power_families: k_max must be in [6, 58]");
    SuiteReport out;
    for (const auto& claim : power_family_claims()) {
        VerificationReport r;
        r.id = claim.id;
        r.statement = claim.statement;
        r.evaluator = c.description();
        r.stated_threshold = claim.stated_min_k;
        r.range = std::to_string(claim.verified_min_k) + " <= k <= " + std::to_string(k_max);
        std::vector<std::int64_t> bad; // k where the formula fails (any k >= 0 with n >= 0)
        std::int64_t first_defined = -1;
        for (std::int64_t k = 0; k <= k_max; ++k) {
            std::int64_t n = static_cast<std::int64_t>(claim.scale << k) + claim.offset;
            if (n < 0)
                continue;
            if (first_defined < 0)
                first_defined = k;
            Rational actual = c.at(static_cast<std::uint64_t>(n));
            Rational formula = claim.form(k);
            bool ok = actual == formula;
            if (!ok)
                bad.push_back(k);
            if (k >= claim.verified_min_k)
                r.check(ok, [&] {
                    return "k=" + std::to_string(k) + " n=" + std::to_string(n) + ": c=" + actual.get_str() +
                           ", formula " + formula.get_str();
                });
            else if (!ok && k >= claim.stated_min_k)
                r.notes.push_back("stated range fails at k=" + std::to_string(k) + " (n=" + std::to_string(n) +
                                  "): c=" + actual.get_str() + ", formula " + formula.get_str());
        }
        if (bad.empty() || bad.back() < k_max)
            r.detected_threshold = bad.empty() ? first_defined : bad.back() + 1;
        if (r.detected_threshold && *r.detected_threshold > claim.stated_min_k)
            r.notes.push_back("stated range k >= " + std::to_string(claim.stated_min_k) +
                              " is inconsistent with c; formula holds from k >= " +
                              std::to_string(*r.detected_threshold));
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Recurrences c(2i), c(4i+1), c(4i+3) and their automatic remainders

struct RecurrenceSpec {
    std::string name;        // a0, a1, a3
    std::string target;      // remainder as a target expression
    std::string statement;
    Rational lower, upper;   // bounds on the remainder
    std::uint64_t bound_from; // bounds asserted for i >= bound_from
};

inline std::vector<RecurrenceSpec> recurrence_specs()
{
    return {
        {"a0", "c(2n)-2c(n)", "c(2i) = 2c(i) + a0(i)", Rational(2), Rational(6), 3},
        {"a1", "c(4n+1)-2c(n+1)-c(2n+1)", "c(4i+1) = 2c(i+1) + c(2i+1) + a1(i)", Rational(0), Rational(10), 2},
        {"a3", "c(4n+3)-1/2c(2n)-c(2n+3)-1/2c(2n+4)", "c(4i+3) = 1/2c(2i) + c(2i+3) + 1/2c(2i+4) + a3(i)",
         Rational(-1), Rational(3), 1},
    };
}

struct RecurrenceAutomata {
    LinearRepresentation a0_rep, a1_rep, a3_rep; // minimized
    Dfao a0, a1, a3;                              // minimized

    const Dfao& dfao(const std::string& name) const
    {
        if (name == "a0")
            return a0;
        if (name == "a1")
            return a1;
        if (name == "a3")
            return a3;
        throw std::invalid_argument("unknown remainder '" + name + "'");
    }
};

/// Representation of a remainder: block combination of transformed copies of
/// the representation of c, minimized.
inline LinearRepresentation remainder_representation(const LinearRepresentation& c_rep, const std::string& target)
{
    return minimize(target_representation(parse_target(target), c_rep));
}

inline RecurrenceAutomata build_recurrence_automata(const LinearRepresentation& c_rep,
                                                    std::size_t state_cap = default_state_cap)
{
    auto specs = recurrence_specs();
    auto rep0 = remainder_representation(c_rep, specs[0].target);
    auto rep1 = remainder_representation(c_rep, specs[1].target);
    auto rep3 = remainder_representation(c_rep, specs[2].target);
    auto d0 = dfao_minimize(semigroup_trick(rep0, state_cap));
    auto d1 = dfao_minimize(semigroup_trick(rep1, state_cap));
    auto d3 = dfao_minimize(semigroup_trick(rep3, state_cap));
    return {std::move(rep0), std::move(rep1), std::move(rep3), std::move(d0), std::move(d1), std::move(d3)};
}

struct RecurrenceRanges {
    std::uint64_t identity_max = 10'000;  // identities checked for i <= this
    std::uint64_t bound_max = 100'000;    // DFAO output bounds for i <= this
    std::uint64_t zero_set_max = 1u << 20; // a1 zero set for i <= this
};

inline bool is_three_pow2_minus1(std::uint64_t m) { return (m + 1) % 3 == 0 && std::has_single_bit((m + 1) / 3); }

inline SuiteReport check_recurrences(const Evaluator& c, const RecurrenceAutomata& automata,
                                     const RecurrenceRanges& ranges)
{
    if (ranges.identity_max < 191)
        throw std::invalid_argument("check_recurrences: identity range must reach 191");
    SuiteReport out;
    auto table = c.table(4 * ranges.identity_max + 5);
    auto cf = [&](std::uint64_t n) { return table[n]; };
    for (const auto& spec : recurrence_specs()) {
        const Dfao& d = automata.dfao(spec.name);
        auto target = parse_target(spec.target);
        VerificationReport r;
        r.id = spec.name + ".identity";
        r.statement = spec.statement + " with " + spec.name + " computed by its DFAO";
        r.range = "0 <= i <= " + n_str(ranges.identity_max);
        r.evaluator = c.description() + "; " + spec.name + " DFAO (" + std::to_string(d.state_count()) + " states)";
        for (std::uint64_t i = 0; i <= ranges.identity_max; ++i) {
            Rational from_c = evaluate_target(target, cf, i);
            const Rational& from_dfao = d.evaluate(i);
            r.check(from_c == from_dfao, [&] {
                return "i=" + n_str(i) + ": from c " + from_c.get_str() + ", DFAO " + from_dfao.get_str();
            });
        }
        out.push_back(std::move(r));

        VerificationReport b;
        b.id = spec.name + ".bounds";
        b.statement = spec.lower.get_str() + " <= " + spec.name + "(i) <= " + spec.upper.get_str() + " for i >= " +
                      n_str(spec.bound_from);
        b.range = n_str(spec.bound_from) + " <= i <= " + n_str(ranges.bound_max);
        b.evaluator = spec.name + " DFAO";
        auto range = output_range(d, spec.bound_from, ranges.bound_max);
        for (const auto& value : range.attained)
            b.check(value >= spec.lower && value <= spec.upper, [&] {
                for (std::uint64_t i = spec.bound_from; i <= ranges.bound_max; ++i)
                    if (d.evaluate(i) == value)
                        return "i=" + n_str(i) + ": " + spec.name + "=" + value.get_str();
                return "value " + value.get_str();
            });
        std::string attained, reachable;
        for (const auto& x : range.attained)
            attained += (attained.empty() ? "" : ", ") + x.get_str();
        for (const auto& x : range.reachable)
            reachable += (reachable.empty() ? "" : ", ") + x.get_str();
        b.notes.push_back("outputs attained on range: {" + attained + "}");
        b.notes.push_back("outputs of reachable states: {" + reachable + "}");
        out.push_back(std::move(b));
    }

    VerificationReport z;
    z.id = "a1.zero_set";
    z.statement = "a1(m) = 0 iff m = 3*2^k - 1";
    z.range = "0 <= m <= " + n_str(ranges.zero_set_max);
    z.evaluator = "a1 DFAO";
    for (std::uint64_t m = 0; m <= ranges.zero_set_max; ++m) {
        bool zero = sgn(automata.a1.evaluate(m)) == 0;
        z.check(zero == is_three_pow2_minus1(m), [&] {
            return "m=" + n_str(m) + ": a1=" + automata.a1.evaluate(m).get_str();
        });
    }
    out.push_back(std::move(z));
    return out;
}

// ---------------------------------------------------------------------------
// Upper bound

inline SuiteReport check_upper_bound(const Evaluator& c, std::uint64_t n_max, unsigned power_k_max = 40)
{
    if (n_max < 45)
        throw std::invalid_argument("check_upper_bound: n_max must be >= 45");
    auto table = c.table(n_max + 1);
    SuiteReport out;

    VerificationReport a;
    a.id = "upper.2n-4";
    a.statement = "c(n) <= 2n - 4 for n >= 3";
    a.range = "3 <= n <= " + n_str(n_max);
    a.evaluator = c.description();
    for (std::uint64_t n = 3; n <= n_max; ++n)
        a.check(table[n] <= from_u64(2 * n) - 4,
                [&] { return "n=" + n_str(n) + ": c=" + table[n].get_str(); });
    out.push_back(std::move(a));

    VerificationReport b;
    b.id = "upper.2n-7";
    b.statement = "c(n) <= 2n - 7 for n >= 12, n not a power of 2";
    b.range = "12 <= n <= " + n_str(n_max);
    b.evaluator = c.description();
    for (std::uint64_t n = 12; n <= n_max; ++n)
        if (!in_set(SetId::P2, n))
            b.check(table[n] <= from_u64(2 * n) - 7,
                    [&] { return "n=" + n_str(n) + ": c=" + table[n].get_str(); });
    out.push_back(std::move(b));

    VerificationReport e;
    e.id = "upper.powers_of_two";
    e.statement = "c(n) = 2n - 4 for n = 2^k >= 8";
    e.range = "3 <= k <= " + std::to_string(power_k_max);
    e.evaluator = c.description();
    for (unsigned k = 3; k <= power_k_max; ++k) {
        std::uint64_t n = std::uint64_t{1} << k;
        Rational v = n <= n_max ? table[n] : c.at(n);
        e.check(v == from_u64(2 * n) - 4, [&] { return "k=" + std::to_string(k) + ": c=" + v.get_str(); });
    }
    out.push_back(std::move(e));

    // witness family for limsup c(n)/n = 2: the maximum of c(n)/n over
    // [2^10, n_max] sits at the largest power of two, with value 2 - 4/n
    if (n_max >= 2048) {
        VerificationReport w;
        w.id = "upper.limsup_witness";
        w.statement = "max c(n)/n over [1024, n_max] is attained at a power of two and equals 2 - 4/n";
        w.range = "1024 <= n <= " + n_str(n_max);
        w.evaluator = c.description();
        Rational best = -1;
        std::uint64_t arg = 0;
        for (std::uint64_t n = 1024; n <= n_max; ++n) {
            Rational ratio = table[n] / from_u64(n);
            if (ratio > best) {
                best = ratio;
                arg = n;
            }
        }
        w.check(in_set(SetId::P2, arg) && best == 2 - Rational(4) / from_u64(arg), [&] {
            return "max at n=" + n_str(arg) + " value " + best.get_str();
        });
        w.notes.push_back("max c(n)/n = " + best.get_str() + " at n = " + n_str(arg));
        out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lower bound and the J characterization

inline SuiteReport check_lower_bound(const Evaluator& c, std::uint64_t n_max)
{
    if (n_max < 191)
        throw std::invalid_argument("check_lower_bound: n_max must be >= 191");
    auto table = c.table(n_max + 1);
    SuiteReport out;

    VerificationReport i1;
    i1.id = "lower.claim_i";
    i1.statement = "c(n) >= 4n/3 - 4";
    i1.range = "0 <= n <= " + n_str(n_max);
    i1.evaluator = c.description();
    for (std::uint64_t n = 0; n <= n_max; ++n)
        i1.check(3 * table[n] >= from_u64(4 * n) - 12, [&] { return "n=" + n_str(n) + ": c=" + table[n].get_str(); });
    out.push_back(std::move(i1));

    VerificationReport i2;
    i2.id = "lower.claim_ii";
    i2.statement = "c(n) >= 4n/3 - 2 for even n not in J";
    i2.range = "0 <= n <= " + n_str(n_max);
    i2.evaluator = c.description();
    for (std::uint64_t n = 0; n <= n_max; n += 2)
        if (!in_set(SetId::J, n))
            i2.check(3 * table[n] >= from_u64(4 * n) - 6,
                     [&] { return "n=" + n_str(n) + ": c=" + table[n].get_str(); });
    out.push_back(std::move(i2));

    VerificationReport i3;
    i3.id = "lower.claim_iii";
    i3.statement = "c(n) >= (4n+16)/3 for odd n >= 47 not in A or B";
    i3.range = "47 <= n <= " + n_str(n_max);
    i3.evaluator = c.description();
    for (std::uint64_t n = 47; n <= n_max; n += 2)
        if (!in_set(SetId::A, n) && !in_set(SetId::B, n))
            i3.check(3 * table[n] >= from_u64(4 * n + 16),
                     [&] { return "n=" + n_str(n) + ": c=" + table[n].get_str(); });
    out.push_back(std::move(i3));
    return out;
}

inline SuiteReport check_j_characterization(const Evaluator& c, std::uint64_t n_max)
{
    if (n_max < 191)
        throw std::invalid_argument("check_j_characterization: n_max must be >= 191");
    auto table = c.table(n_max + 1);
    SuiteReport out;
    VerificationReport r;
    r.id = "jchar";
    r.statement = "c(n) = 4n/3 - 4 iff n in J";
    r.range = "0 <= n <= " + n_str(n_max);
    r.evaluator = c.description();
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        bool tight = 3 * table[n] == from_u64(4 * n) - 12;
        bool j = in_set(SetId::J, n);
        r.check(tight == j, [&] {
            return "n=" + n_str(n) + ": c=" + table[n].get_str() + (j ? " (in J)" : " (not in J)");
        });
    }
    out.push_back(std::move(r));

    // witness family for liminf c(n)/n = 4/3
    if (n_max >= 2048) {
        VerificationReport w;
        w.id = "jchar.liminf_witness";
        w.statement = "min c(n)/n over [1024, n_max] is attained in J and equals 4/3 - 4/n";
        w.range = "1024 <= n <= " + n_str(n_max);
        w.evaluator = c.description();
        Rational best = 3;
        std::uint64_t arg = 0;
        for (std::uint64_t n = 1024; n <= n_max; ++n) {
            Rational ratio = table[n] / from_u64(n);
            if (ratio < best) {
                best = ratio;
                arg = n;
            }
        }
        w.check(in_set(SetId::J, arg) && best == Rational(4, 3) - Rational(4) / from_u64(arg), [&] {
            return "min at n=" + n_str(arg) + " value " + best.get_str();
        });
        w.notes.push_back("min c(n)/n = " + best.get_str() + " at n = " + n_str(arg));
        out.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exceptional-set items

struct PatternClaim {
    std::string id;
    std::string statement;
    std::string pattern;
    ClosedForm expected; // over basis::two_parameter()
    std::int64_t i_min, j_min;
    std::vector<ParamPoint> excluded;
    std::int64_t fit_j_min; // sample region keeps every run of a repeated digit >= 3 long
    bool lower_bound_4n16 = false;
    /// n as a function of (i, j), for cross-checking the pattern
    std::function<std::uint64_t(std::int64_t, std::int64_t)> n_of;
};

inline std::vector<PatternClaim> pattern_claims()
{
    auto q = [](long p, long d = 1) { return make_rational(p, d); };
    auto form = [](RationalVector c) { return ClosedForm{basis::two_parameter(), std::move(c)}; };
    auto jval = [](std::int64_t i, std::int64_t j) {
        return ((std::uint64_t{1} << (2 * i + 1)) + 1) << j;
    };
    // coefficient order: 2^(2i+j), 2^j, 2^(2i), 1, 2^(2i)(-1)^j, (-1)^j
    return {
        {"exceptional.J", "n = (2^(2i+1)+1)2^j: c(n) = 8/3*2^(2i+j) + 4/3*2^j - 4 = 4n/3 - 4", "1 0^{2i} 1 0^{j}",
         form({q(8, 3), q(4, 3), q(0), q(-4), q(0), q(0)}), 1, 0, {}, 3, false,
         [=](std::int64_t i, std::int64_t j) { return jval(i, j); }},
        {"exceptional.4J+3",
         "n = (2^(2i+1)+1)2^(j+2)+3, n != 39: c(n) = (104*2^(2i+j) + 64*2^j + 4*2^(2i)(-1)^j - 10(-1)^j + 18)/9 "
         ">= (4n+16)/3",
         "1 0^{2i} 1 0^{j} 11", form({q(104, 9), q(64, 9), q(0), q(2), q(4, 9), q(-10, 9)}), 1, 0, {{1, 0}}, 3, true,
         [=](std::int64_t i, std::int64_t j) { return jval(i, j + 2) + 3; }},
        {"exceptional.2J+3",
         "n = (2^(2i+1)+1)2^(j+1)+3, j >= 1: c(n) = (52*2^(2i+j) + 32*2^j - 4*2^(2i)(-1)^j + 10(-1)^j + 18)/9",
         "1 0^{2i} 1 0^{j-1} 11", form({q(52, 9), q(32, 9), q(0), q(2), q(-4, 9), q(10, 9)}), 1, 1, {}, 4, false,
         [=](std::int64_t i, std::int64_t j) { return jval(i, j + 1) + 3; }},
        {"exceptional.2J-5",
         "n = (2^(2i+1)+1)2^(j+1)-5, j >= 2: c(n) = 6*2^(2i+j) + 4*2^j + 8/3*2^(2i)(-1)^j - 2/3(-1)^j - 14",
         "1 0^{2i+1} 1^{j-2} 011", form({q(6), q(4), q(0), q(-14), q(8, 3), q(-2, 3)}), 1, 2, {}, 5, false,
         [=](std::int64_t i, std::int64_t j) { return jval(i, j + 1) - 5; }},
    };
}

struct ExceptionalSetOptions {
    std::int64_t param_max = 8;
    unsigned k_max = 40; // families A, B, D
};

inline SuiteReport check_exceptional_sets(const Evaluator& c, const LinearRepresentation& c_rep, const ExceptionalSetOptions& opt)
{
    if (opt.param_max < 5)
        throw std::invalid_argument("check_exceptional_sets: param_max must be >= 5");
    SuiteReport out;
    auto n_limit = [](unsigned k) { return k < 60; };

    VerificationReport a;
    a.id = "exceptional.A";
    a.statement = "n = 2^k - 1: c(n) >= 4n/3 - 2";
    a.range = "1 <= k <= " + std::to_string(opt.k_max);
    a.evaluator = c.description();
    for (unsigned k = 1; k <= opt.k_max && n_limit(k); ++k) {
        std::uint64_t n = (std::uint64_t{1} << k) - 1;
        Rational v = c.at(n);
        a.check(3 * v >= from_u64(4 * n) - 6, [&] { return "n=" + n_str(n) + ": c=" + v.get_str(); });
    }
    out.push_back(std::move(a));

    VerificationReport b;
    b.id = "exceptional.B";
    b.statement = "n = 2^k + 1, k >= 2: c(n) >= 4n/3 - 4";
    b.range = "2 <= k <= " + std::to_string(opt.k_max);
    b.evaluator = c.description();
    for (unsigned k = 2; k <= opt.k_max && n_limit(k); ++k) {
        std::uint64_t n = (std::uint64_t{1} << k) + 1;
        Rational v = c.at(n);
        b.check(3 * v >= from_u64(4 * n) - 12, [&] { return "n=" + n_str(n) + ": c=" + v.get_str(); });
    }
    out.push_back(std::move(b));

    VerificationReport d;
    d.id = "exceptional.D";
    d.statement = "n = 12*2^k - 3: c(n) = 2c((n+3)/4) + c((n+1)/2)";
    d.range = "0 <= k <= " + std::to_string(opt.k_max);
    d.evaluator = c.description();
    for (unsigned k = 0; k <= opt.k_max && n_limit(k + 4); ++k) {
        std::uint64_t n = 12 * (std::uint64_t{1} << k) - 3;
        Rational lhs = c.at(n), rhs = 2 * c.at((n + 3) / 4) + c.at((n + 1) / 2);
        d.check(lhs == rhs, [&] { return "n=" + n_str(n) + ": " + lhs.get_str() + " vs " + rhs.get_str(); });
    }
    out.push_back(std::move(d));

    for (const auto& claim : pattern_claims()) {
        VerificationReport r;
        r.id = claim.id;
        r.statement = claim.statement;
        r.range = std::to_string(claim.i_min) + " <= i <= " + std::to_string(opt.param_max) + ", " +
                  std::to_string(claim.j_min) + " <= j <= " + std::to_string(opt.param_max);
        r.evaluator = c.description() + "; fit on " + claim.pattern;
        DigitPattern pattern(claim.pattern);
        std::vector<ParamPoint> grid;
        for (std::int64_t i = claim.i_min; i <= opt.param_max; ++i)
            for (std::int64_t j = claim.j_min; j <= opt.param_max; ++j)
                if (std::find(claim.excluded.begin(), claim.excluded.end(), ParamPoint{i, j}) == claim.excluded.end())
                    grid.push_back({i, j});
        try {
            auto samples = choose_samples(claim.expected.basis, 2, claim.fit_j_min, opt.param_max);
            std::vector<ParamPoint> holdouts;
            for (const auto& p : grid)
                if (std::find(samples.begin(), samples.end(), p) == samples.end())
                    holdouts.push_back(p);
            auto fitted = fit_closed_form(c_rep, pattern, claim.expected.basis, samples, holdouts);
            r.notes.push_back("fitted: " + fitted.to_string());
            r.check(fitted.coeffs == claim.expected.coeffs, [&] {
                return "fitted " + fitted.to_string() + " differs from stated " + claim.expected.to_string();
            });
        } catch (const std::exception& e) {
            r.check(false, [&] { return std::string("fit failed: ") + e.what(); });
        }
        for (const auto& [i, j] : grid) {
            std::uint64_t n = claim.n_of(i, j);
            auto z = pattern.expand(i, j);
            r.check(z && digits_value(*z) == n, [&] { return "pattern/value mismatch at n=" + n_str(n); });
            Rational v = c.at(n);
            Rational formula = claim.expected(i, j);
            r.check(v == formula, [&] {
                return "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ") n=" + n_str(n) +
                       ": c=" + v.get_str() + ", formula " + formula.get_str();
            });
            if (claim.id == "exceptional.J")
                r.check(3 * v == from_u64(4 * n) - 12, [&] { return "n=" + n_str(n) + ": c != 4n/3 - 4"; });
            if (claim.lower_bound_4n16)
                r.check(3 * formula >= from_u64(4 * n + 16), [&] {
                    return "n=" + n_str(n) + ": formula " + formula.get_str() + " < (4n+16)/3";
                });
        }
        out.push_back(std::move(r));
    }

    VerificationReport m;
    m.id = "exceptional.minimal_polynomial";
    m.statement = "minimal polynomial of gamma(0) is X^2 (X-1)(X-2)(X+1)";
    m.range = "minimized representation of c (rank " + std::to_string(c_rep.rank()) + ")";
    m.evaluator = "representation";
    auto expected = Polynomial::from_roots({Rational(0), Rational(0), Rational(1), Rational(2), Rational(-1)});
    auto actual = minimal_polynomial(minimize(c_rep).gamma(0));
    m.check(actual == expected, [&] { return "got " + actual.to_string(); });
    m.notes.push_back("minimal polynomial: " + actual.to_string());
    out.push_back(std::move(m));
    return out;
}

// ---------------------------------------------------------------------------
// The characteristic word of the powers of two

struct Powers2Options {
    unsigned n_max_exp = 14;
    /// Growth probe covers every n in [2, 2^probe_exp] by brute force.
    unsigned probe_exp = 10;
};

inline SuiteReport check_powers2_word(const ComplexityOracle& p_oracle, const Powers2Options& opt)
{
    if (opt.n_max_exp < 4)
        throw std::invalid_argument("check_powers2_word: n_max_exp must be >= 4");
    SuiteReport out;
    VerificationReport r;
    r.id = "powers2.c_p(2^n)";
    r.statement = "c_p(2^n) = n + 2";
    r.range = "0 <= n <= " + std::to_string(opt.n_max_exp);
    r.evaluator = "brute:" + p_oracle.stream().name();
    for (unsigned n = 0; n <= opt.n_max_exp; ++n) {
        std::size_t v = p_oracle.cyclic(std::size_t{1} << n);
        r.check(v == n + 2, [&] { return "n=" + std::to_string(n) + ": c_p=" + std::to_string(v); });
    }
    out.push_back(std::move(r));

    VerificationReport g;
    g.id = "powers2.growth";
    g.statement = "c_p(n) = O(log n): report max c_p(n)/log2(n)";
    const unsigned probe = std::min(opt.probe_exp, opt.n_max_exp);
    g.range = "2 <= n <= 2^" + std::to_string(probe);
    g.evaluator = "brute:" + p_oracle.stream().name();
    double best = 0;
    std::size_t arg = 2;
    for (std::size_t n = 2; n <= (std::size_t{1} << probe); ++n) {
        double ratio = static_cast<double>(p_oracle.cyclic(n)) / std::log2(static_cast<double>(n));
        ++g.checked;
        if (ratio > best) {
            best = ratio;
            arg = n;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max c_p(n)/log2(n) = %.6f at n = %zu (c_p = %zu)", best, arg, p_oracle.cyclic(arg));
    g.notes.push_back(buf);
    out.push_back(std::move(g));
    return out;
}

} // namespace cyc
