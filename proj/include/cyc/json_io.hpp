#pragma once

// JSON file formats. Rationals are written as "p/q" strings (always with a
// denominator) and read back from "p/q" or "p".
//
//   representation: {"rank": r, "v": [...], "gamma0": [[...]], "gamma1": [[...]], "w": [...]}
//   dfao:           {"states": n, "initial": q0, "delta": [[q_on_0, q_on_1], ...], "outputs": [...]}

#include "cyc/automata.hpp"
#include "cyc/linrep.hpp"
#include "cyc/verify.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cyc {

using json = nlohmann::ordered_json;

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline json vector_to_json(const RationalVector& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_pq_string(x));
    return a;
}

inline RationalVector vector_from_json(const json& j, const char* what)
{
    if (!j.is_array())
        throw FormatError(std::string(what) + ": array expected");
    RationalVector v;
    for (const auto& x : j) {
        if (x.is_string())
            v.push_back(parse_rational(x.get<std::string>()));
        else if (x.is_number_integer())
            v.push_back(make_rational(x.get<std::int64_t>()));
        else
            throw FormatError(std::string(what) + ": rational entries must be \"p/q\" strings");
    }
    return v;
}

inline json matrix_to_json(const RationalMatrix& m)
{
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        a.push_back(vector_to_json(m.row(i)));
    return a;
}

inline RationalMatrix matrix_from_json(const json& j, std::size_t n, const char* what)
{
    if (!j.is_array() || j.size() != n)
        throw FormatError(std::string(what) + ": expected " + std::to_string(n) + " rows");
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = vector_from_json(j[i], what);
        if (row.size() != n)
            throw FormatError(std::string(what) + ": row " + std::to_string(i) + " has wrong length");
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = row[k];
    }
    return m;
}

} // namespace detail

inline json to_json(const LinearRepresentation& rep)
{
    json j;
    j["rank"] = rep.rank();
    j["v"] = detail::vector_to_json(rep.v());
    j["gamma0"] = detail::matrix_to_json(rep.gamma(0));
    j["gamma1"] = detail::matrix_to_json(rep.gamma(1));
    j["w"] = detail::vector_to_json(rep.w());
    return j;
}

inline LinearRepresentation representation_from_json(const json& j)
{
    try {
        const std::size_t r = j.at("rank").get<std::size_t>();
        auto v = detail::vector_from_json(j.at("v"), "v");
        auto w = detail::vector_from_json(j.at("w"), "w");
        if (v.size() != r || w.size() != r)
            throw FormatError("v and w must have length rank");
        return LinearRepresentation(std::move(v), detail::matrix_from_json(j.at("gamma0"), r, "gamma0"),
                                    detail::matrix_from_json(j.at("gamma1"), r, "gamma1"), std::move(w));
    } catch (const json::exception& e) {
        throw FormatError(std::string("representation JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("representation JSON: ") + e.what());
    }
}

inline json to_json(const Dfao& d)
{
    json j;
    j["states"] = d.state_count();
    j["initial"] = d.initial();
    json delta = json::array();
    for (const auto& t : d.transitions())
        delta.push_back({t[0], t[1]});
    j["delta"] = std::move(delta);
    j["outputs"] = detail::vector_to_json(d.outputs());
    return j;
}

inline Dfao dfao_from_json(const json& j)
{
    try {
        const std::size_t n = j.at("states").get<std::size_t>();
        std::vector<Dfao::Transitions> delta;
        for (const auto& t : j.at("delta")) {
            if (!t.is_array() || t.size() != 2)
                throw FormatError("delta entries must be [on0, on1]");
            delta.push_back({t[0].get<std::size_t>(), t[1].get<std::size_t>()});
        }
        auto outputs = detail::vector_from_json(j.at("outputs"), "outputs");
        if (delta.size() != n || outputs.size() != n)
            throw FormatError("delta and outputs must have one entry per state");
        return Dfao(std::move(delta), std::move(outputs), j.at("initial").get<std::size_t>());
    } catch (const json::exception& e) {
        throw FormatError(std::string("DFAO JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("DFAO JSON: ") + e.what());
    }
}

inline json to_json(const VerificationReport& r)
{
    json j;
    j["id"] = r.id;
    j["statement"] = r.statement;
    j["range"] = r.range;
    j["evaluator"] = r.evaluator;
    j["status"] = r.passed ? "pass" : "fail";
    j["checked"] = r.checked;
    j["failures"] = r.failures;
    j["counterexamples"] = r.counterexamples;
    j["stated_threshold"] = r.stated_threshold ? json(*r.stated_threshold) : json(nullptr);
    j["detected_threshold"] = r.detected_threshold ? json(*r.detected_threshold) : json(nullptr);
    j["notes"] = r.notes;
    return j;
}

inline json to_json(const std::string& suite, const SuiteReport& report)
{
    json j;
    j["suite"] = suite;
    j["passed"] = all_passed(report);
    json claims = json::array();
    for (const auto& r : report)
        claims.push_back(to_json(r));
    j["claims"] = std::move(claims);
    return j;
}

inline std::string text_summary(const SuiteReport& report)
{
    std::ostringstream os;
    for (const auto& r : report) {
        os << (r.passed ? "PASS " : "FAIL ") << r.id << "  [" << r.range << "]  " << r.statement << "\n";
        os << "     evaluator: " << r.evaluator << "; checked " << r.checked << "\n";
        if (r.stated_threshold || r.detected_threshold) {
            os << "     threshold: stated " << (r.stated_threshold ? std::to_string(*r.stated_threshold) : "-")
               << ", detected " << (r.detected_threshold ? std::to_string(*r.detected_threshold) : "none") << "\n";
        }
        for (const auto& n : r.notes)
            os << "     note: " << n << "\n";
        for (const auto& c : r.counterexamples)
            os << "     counterexample: " << c << "\n";
    }
    return os.str();
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

} // namespace cyc
