#pragma once

// Deterministic finite automata with output (DFAOs) reading binary digits
// msd-first, and the semigroup trick that turns a linear representation with
// a finite forward orbit into a DFAO.

#include "cyc/linrep.hpp"
#include "cyc/words.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyc {

class Dfao {
public:
    using State = std::size_t;
    using Transitions = std::array<State, 2>;

    Dfao(std::vector<Transitions> delta, std::vector<Rational> outputs, State initial = 0)
        : delta_(std::move(delta)), outputs_(std::move(outputs)), initial_(initial)
    {
        if (delta_.empty())
            throw std::invalid_argument("Dfao: at least one state required");
        if (outputs_.size() != delta_.size())
            throw std::invalid_argument("Dfao: one output per state required");
        if (initial_ >= delta_.size())
            throw std::invalid_argument("Dfao: initial state out of range");
        for (const auto& t : delta_)
            for (State q : t)
                if (q >= delta_.size())
                    throw std::invalid_argument("Dfao: transition target out of range");
    }

    std::size_t state_count() const { return delta_.size(); }
    State initial() const { return initial_; }
    State next(State q, Digit d) const { return delta_.at(q).at(d); }
    const Rational& output(State q) const { return outputs_.at(q); }
    const std::vector<Transitions>& transitions() const { return delta_; }
    const std::vector<Rational>& outputs() const { return outputs_; }

    State run(std::span<const Digit> z) const
    {
        State q = initial_;
        for (Digit d : z)
            q = delta_[q][d];
        return q;
    }

    /// Output after reading the msd-first binary expansion of n.
    const Rational& evaluate(std::uint64_t n) const
    {
        State q = initial_;
        for (int b = 63 - std::countl_zero(n | 1); n && b >= 0; --b)
            q = delta_[q][(n >> b) & 1];
        return outputs_[q];
    }

    /// States reachable from the initial state, in breadth-first order.
    std::vector<State> reachable() const
    {
        std::vector<State> order{initial_};
        std::vector<bool> seen(delta_.size());
        seen[initial_] = true;
        for (std::size_t head = 0; head < order.size(); ++head)
            for (State q : delta_[order[head]])
                if (!seen[q]) {
                    seen[q] = true;
                    order.push_back(q);
                }
        return order;
    }

    /// Moore equivalence class of every state (coarsest output-respecting
    /// bisimulation).
    std::vector<std::size_t> equivalence_classes() const
    {
        const std::size_t n = delta_.size();
        std::vector<std::size_t> cls(n);
        {
            std::map<Rational, std::size_t> by_output;
            for (std::size_t q = 0; q < n; ++q)
                cls[q] = by_output.emplace(outputs_[q], by_output.size()).first->second;
        }
        std::size_t count = 0;
        while (true) {
            std::map<std::array<std::size_t, 3>, std::size_t> sig;
            std::vector<std::size_t> next(n);
            for (std::size_t q = 0; q < n; ++q)
                next[q] = sig.emplace(std::array{cls[q], cls[delta_[q][0]], cls[delta_[q][1]]}, sig.size()).first->second;
            cls = std::move(next);
            if (sig.size() == count)
                return cls;
            count = sig.size();
        }
    }

    /// Reading "0" from the initial state reaches a state bisimilar to it.
    bool leading_zero_consistent() const
    {
        auto cls = equivalence_classes();
        return cls[initial_] == cls[delta_[initial_][0]];
    }

private:
    std::vector<Transitions> delta_;
    std::vector<Rational> outputs_;
    State initial_;
};

inline const Rational& dfao_eval(const Dfao& d, std::uint64_t n) { return d.evaluate(n); }

inline constexpr std::size_t default_state_cap = 100'000;

struct OrbitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Breadth-first closure of {v * gamma(x)}; each distinct exact vector is a
/// state, output u * w. Fails when the orbit exceeds state_cap.
inline Dfao semigroup_trick(const LinearRepresentation& input, std::size_t state_cap = default_state_cap)
{
    if (state_cap == 0)
        throw std::invalid_argument("semigroup_trick: state_cap must be positive");
    const auto rep = msd_complete(input);
    std::map<RationalVector, std::size_t> index;
    std::vector<RationalVector> vecs;
    std::vector<Dfao::Transitions> delta;
    auto intern = [&](RationalVector u) {
        auto [it, added] = index.emplace(u, vecs.size());
        if (added) {
            if (vecs.size() == state_cap)
                throw OrbitError("orbit not finite within cap (" + std::to_string(state_cap) + " states)");
            vecs.push_back(std::move(u));
        }
        return it->second;
    };
    intern(rep.v());
    for (std::size_t head = 0; head < vecs.size(); ++head) {
        Dfao::Transitions t{};
        for (Digit d : {Digit{0}, Digit{1}})
            t[d] = intern(mul(vecs[head], rep.gamma(d)));
        delta.push_back(t);
    }
    std::vector<Rational> outputs;
    outputs.reserve(vecs.size());
    for (const auto& u : vecs)
        outputs.push_back(dot(u, rep.w()));
    return Dfao(std::move(delta), std::move(outputs), 0);
}

/// Minimal output-equivalent DFAO: unreachable states dropped, bisimilar
/// states merged, states renumbered breadth-first from the initial state.
inline Dfao dfao_minimize(const Dfao& d)
{
    auto reach = d.reachable();
    std::vector<std::size_t> local(d.state_count(), SIZE_MAX);
    for (std::size_t i = 0; i < reach.size(); ++i)
        local[reach[i]] = i;
    std::vector<Dfao::Transitions> delta(reach.size());
    std::vector<Rational> outputs(reach.size());
    for (std::size_t i = 0; i < reach.size(); ++i) {
        delta[i] = {local[d.next(reach[i], 0)], local[d.next(reach[i], 1)]};
        outputs[i] = d.output(reach[i]);
    }
    Dfao trimmed(std::move(delta), std::move(outputs), 0);
    auto cls = trimmed.equivalence_classes();

    // renumber classes breadth-first from the initial class
    std::vector<std::size_t> number(trimmed.state_count(), SIZE_MAX);
    std::vector<std::size_t> rep_of; // class number -> representative state
    std::vector<std::size_t> class_number(trimmed.state_count(), SIZE_MAX);
    auto visit = [&](std::size_t q) {
        if (class_number[cls[q]] == SIZE_MAX) {
            class_number[cls[q]] = rep_of.size();
            rep_of.push_back(q);
        }
        return class_number[cls[q]];
    };
    visit(0);
    for (std::size_t head = 0; head < rep_of.size(); ++head)
        for (Digit b : {Digit{0}, Digit{1}})
            visit(trimmed.next(rep_of[head], b));
    std::vector<Dfao::Transitions> qdelta(rep_of.size());
    std::vector<Rational> qout(rep_of.size());
    for (std::size_t i = 0; i < rep_of.size(); ++i) {
        qdelta[i] = {class_number[cls[trimmed.next(rep_of[i], 0)]], class_number[cls[trimmed.next(rep_of[i], 1)]]};
        qout[i] = trimmed.output(rep_of[i]);
    }
    return Dfao(std::move(qdelta), std::move(qout), 0);
}

struct OutputRange {
    std::set<Rational> attained;  // outputs at n in [from, to]
    std::set<Rational> reachable; // outputs of all reachable states
};

inline OutputRange output_range(const Dfao& d, std::uint64_t from, std::uint64_t to)
{
    if (from > to)
        throw std::invalid_argument("output_range: empty range");
    OutputRange r;
    for (std::uint64_t n = from;; ++n) {
        r.attained.insert(d.evaluate(n));
        if (n == to)
            break;
    }
    for (auto q : d.reachable())
        r.reachable.insert(d.output(q));
    return r;
}

/// Graphviz text; states labeled "q{i}/{output}", edges by digit.
inline std::string to_dot(const Dfao& d, const std::string& name = "dfao")
{
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n  start [shape=point];\n";
    for (std::size_t q = 0; q < d.state_count(); ++q)
        os << "  q" << q << " [label=\"q" << q << "/" << d.output(q).get_str() << "\"];\n";
    os << "  start -> q" << d.initial() << ";\n";
    for (std::size_t q = 0; q < d.state_count(); ++q)
        for (Digit b : {Digit{0}, Digit{1}})
            os << "  q" << q << " -> q" << d.next(q, b) << " [label=\"" << int(b) << "\"];\n";
    os << "}\n";
    return os.str();
}

/// An automatic word: symbol i is the DFAO output at i (outputs must be
/// integers in 0..255).
inline SymbolStream dfao_stream(const Dfao& d, std::string name = "dfao")
{
    unsigned max_symbol = 0;
    for (const auto& o : d.outputs()) {
        if (!is_integer(o) || sgn(o) < 0 || o > 255)
            throw std::invalid_argument("dfao_stream: outputs must be integers in 0..255");
        max_symbol = std::max<unsigned>(max_symbol, static_cast<unsigned>(o.get_num().get_ui()));
    }
    std::vector<Symbol> table;
    for (const auto& o : d.outputs())
        table.push_back(static_cast<Symbol>(o.get_num().get_ui()));
    return SymbolStream(std::move(name), max_symbol + 1, 0,
                        [d, table](std::uint64_t i) { return table[d.run(binary_digits(i))]; });
}

} // namespace cyc
