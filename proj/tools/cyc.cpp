// cyc: command-line front end.
//
//   cyc compute  --seq tm --n 0..19 [--subword] [--ratio] [--csv] [--out FILE]
//   cyc learn    --seq tm --target "c(2n)-2c(n)" --out a0.json
//   cyc minimize --rep a0.json --out a0.min.json
//   cyc dfao     --rep a0.min.json --out a0.dfao.json --dot a0.dot
//   cyc verify   --suite all --evaluator rep:c.json
//   cyc --seed-tables DIR
//
// Exit codes: 0 success / all claims pass, 1 some claim failed,
// 2 configuration or resource error.

#include "cyc/json_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace {

using namespace cyc;

constexpr int exit_ok = 0;
constexpr int exit_claim_failed = 1;
constexpr int exit_config = 2;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Caps {
    std::size_t prefix_cap = default_prefix_cap;
    std::size_t rank_cap = LearnOptions{}.rank_cap;
    std::size_t state_cap = default_state_cap;
    unsigned jobs = 1;
};

SymbolStream make_stream(const std::string& seq)
{
    if (seq == "tm")
        return thue_morse();
    if (seq == "p")
        return powers_of_two_word();
    if (seq.rfind("dfao:", 0) == 0)
        return dfao_stream(dfao_from_json(read_json_file(seq.substr(5))), "dfao");
    throw ConfigError("unknown sequence '" + seq + "' (expected tm, p or dfao:<file>)");
}

struct Range {
    std::uint64_t from = 0, to = 0;
};

Range parse_range(const std::string& text)
{
    auto number = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("bad range '" + text + "' (expected N or A..B)");
        return std::stoull(s);
    };
    auto dots = text.find("..");
    Range r;
    if (dots == std::string::npos) {
        r.from = r.to = number(text);
    } else {
        r.from = number(text.substr(0, dots));
        r.to = number(text.substr(dots + 2));
    }
    if (r.from > r.to)
        throw ConfigError("empty range '" + text + "'");
    return r;
}

/// Writes to a file, or to stdout for "-".
void emit(const std::string& path, const std::string& text)
{
    if (path == "-")
        std::cout << text << std::flush;
    else
        write_text_file(path, text);
}

// ---------------------------------------------------------------------------
// compute

struct ComputeConfig {
    std::string seq = "tm";
    std::string range;
    bool subword = false;
    bool ratio = false;
    bool csv = false;
    std::string out = "-";
};

int run_compute(const ComputeConfig& cfg, const Caps& caps)
{
    const Range r = parse_range(cfg.range);
    ComplexityOracle oracle(make_stream(cfg.seq), caps.prefix_cap);
    auto c = oracle.cyclic_range(r.from, r.to, caps.jobs);
    std::vector<std::size_t> rho;
    if (cfg.subword)
        rho = oracle.subword_range(r.from, r.to, caps.jobs);

    std::string text;
    if (cfg.csv) {
        text = "n,c(n),3c(n)-4n,2n-4-c(n)";
        if (cfg.subword)
            text += ",rho(n)";
        text += "\n";
        for (std::uint64_t n = r.from; n <= r.to; ++n) {
            const auto cn = static_cast<long long>(c[n - r.from]);
            const auto nn = static_cast<long long>(n);
            text += std::to_string(n) + "," + std::to_string(cn) + "," + std::to_string(3 * cn - 4 * nn) + "," +
                    std::to_string(2 * nn - 4 - cn);
            if (cfg.subword)
                text += "," + std::to_string(rho[n - r.from]);
            text += "\n";
        }
    } else {
        for (std::uint64_t n = r.from; n <= r.to; ++n) {
            text += "c(" + std::to_string(n) + ") = " + std::to_string(c[n - r.from]);
            if (cfg.subword)
                text += "  rho(" + std::to_string(n) + ") = " + std::to_string(rho[n - r.from]);
            if (cfg.ratio && n > 0)
                text += "  c(n)/n = " + to_display_string(from_u64(c[n - r.from]) / from_u64(n));
            text += "\n";
        }
    }
    emit(cfg.out, text);
    return exit_ok;
}

// ---------------------------------------------------------------------------
// learn / minimize / dfao

struct LearnConfig {
    std::string seq = "tm";
    std::string target = "c(n)";
    std::string out;
    std::size_t training_depth = LearnOptions{}.training_depth;
    std::size_t suffix_depth = LearnOptions{}.suffix_depth;
    bool minimize = false;
};

LinearRepresentation learn_target(const ComplexityOracle& oracle, const Target& target, const LearnOptions& opt,
                                  std::size_t* queries = nullptr)
{
    auto f = [&](std::uint64_t n) { return from_u64(oracle.cyclic(n)); };
    auto result = learn_from_oracle([&](std::uint64_t n) { return evaluate_target(target, f, n); }, opt);
    if (queries)
        *queries = result.queries;
    return std::move(result.rep);
}

int run_learn(const LearnConfig& cfg, const Caps& caps)
{
    auto target = parse_target(cfg.target);
    ComplexityOracle oracle(make_stream(cfg.seq), caps.prefix_cap);
    LearnOptions opt;
    opt.rank_cap = caps.rank_cap;
    opt.training_depth = cfg.training_depth;
    opt.suffix_depth = cfg.suffix_depth;
    std::size_t queries = 0;
    auto rep = learn_target(oracle, target, opt, &queries);
    if (cfg.minimize)
        rep = minimize(rep);
    write_text_file(cfg.out, to_json(rep).dump(2) + "\n");
    std::cout << "rank " << rep.rank() << " (" << queries << " oracle values, target " << to_string(target) << ")\n";
    return exit_ok;
}

int run_minimize(const std::string& in, const std::string& out)
{
    auto rep = minimize(representation_from_json(read_json_file(in)));
    write_text_file(out, to_json(rep).dump(2) + "\n");
    std::cout << "rank " << rep.rank() << "\n";
    return exit_ok;
}

struct DfaoConfig {
    std::string rep;
    std::string out;
    std::string dot;
    std::string name = "dfao";
};

int run_dfao(const DfaoConfig& cfg, const Caps& caps)
{
    auto rep = representation_from_json(read_json_file(cfg.rep));
    auto d = dfao_minimize(semigroup_trick(rep, caps.state_cap));
    write_text_file(cfg.out, to_json(d).dump(2) + "\n");
    if (!cfg.dot.empty())
        write_text_file(cfg.dot, to_dot(d, cfg.name));
    std::cout << "states " << d.state_count() << "\n";
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify

const std::vector<std::string> suite_names{"prop1", "recurrences", "upper", "lower", "jchar", "lemma6", "powers2"};

struct VerifyConfig {
    std::string suite;
    std::string evaluator = "auto";
    std::uint64_t n_max = 100'000;
    std::int64_t k_max = 40;
    std::int64_t param_max = 8;
    std::uint64_t trusted_limit = 300;
    RecurrenceRanges recurrence;
    Powers2Options powers2;
    std::vector<std::string> remainders; // name:file
    std::string report;
    std::string summary;
};

class VerifyContext {
public:
    VerifyContext(const VerifyConfig& cfg, const Caps& caps) : cfg_(cfg), caps_(caps)
    {
        oracle_ = std::make_shared<const ComplexityOracle>(thue_morse(), caps.prefix_cap);
        brute_ = std::make_shared<OracleEvaluator>(oracle_, caps.jobs);
    }

    /// The representation of c used for fitting and remainder automata,
    /// certified against the oracle. The certificate goes into the report.
    const LinearRepresentation& c_rep(SuiteReport& out)
    {
        if (!c_rep_) {
            if (cfg_.evaluator.rfind("rep:", 0) == 0) {
                c_rep_ = representation_from_json(read_json_file(cfg_.evaluator.substr(4)));
                RepresentationEvaluator fast(*c_rep_, cfg_.evaluator);
                certificate_ = certify(fast, *brute_, cfg_.trusted_limit);
            } else {
                LearnOptions opt;
                opt.rank_cap = caps_.rank_cap;
                auto learned = learn_certified(oracle_, opt, cfg_.trusted_limit, caps_.jobs);
                c_rep_ = std::move(learned.rep);
                certificate_ = std::move(learned.certificate);
            }
            certificate_.id = "certify.c";
        }
        if (!certificate_emitted_) {
            out.push_back(certificate_);
            certificate_emitted_ = true;
        }
        return *c_rep_;
    }

    /// Evaluator for c: the oracle on n <= trusted_limit, the chosen fast
    /// evaluator beyond (pure oracle for "brute").
    EvaluatorPtr evaluator(SuiteReport& out)
    {
        if (evaluator_)
            return evaluator_;
        const std::string& e = cfg_.evaluator;
        if (e == "brute") {
            evaluator_ = brute_;
        } else if (e == "auto" || e.rfind("rep:", 0) == 0) {
            const auto& rep = c_rep(out);
            auto fast = std::make_shared<RepresentationEvaluator>(rep, e == "auto" ? "learned c" : e);
            evaluator_ = std::make_shared<HybridEvaluator>(brute_, fast, cfg_.trusted_limit);
        } else if (e.rfind("dfao:", 0) == 0) {
            auto fast = std::make_shared<DfaoEvaluator>(dfao_from_json(read_json_file(e.substr(5))), e);
            VerificationReport cert = certify(*fast, *brute_, cfg_.trusted_limit);
            cert.id = "certify.evaluator";
            out.push_back(std::move(cert));
            evaluator_ = std::make_shared<HybridEvaluator>(brute_, fast, cfg_.trusted_limit);
        } else {
            throw ConfigError("unknown evaluator '" + e + "' (expected auto, brute, rep:<file> or dfao:<file>)");
        }
        return evaluator_;
    }

    RecurrenceAutomata automata(SuiteReport& out)
    {
        std::map<std::string, Dfao> given;
        for (const auto& spec : cfg_.remainders) {
            auto colon = spec.find(':');
            std::string name = spec.substr(0, colon);
            if (colon == std::string::npos || (name != "a0" && name != "a1" && name != "a3"))
                throw ConfigError("bad --remainder '" + spec + "' (expected a0:<file>, a1:<file> or a3:<file>)");
            given.insert_or_assign(name, dfao_from_json(read_json_file(spec.substr(colon + 1))));
        }
        if (given.size() == 3)
            return {LinearRepresentation::zero(), LinearRepresentation::zero(), LinearRepresentation::zero(),
                    given.at("a0"), given.at("a1"), given.at("a3")};
        auto built = build_recurrence_automata(c_rep(out), caps_.state_cap);
        if (auto it = given.find("a0"); it != given.end())
            built.a0 = it->second;
        if (auto it = given.find("a1"); it != given.end())
            built.a1 = it->second;
        if (auto it = given.find("a3"); it != given.end())
            built.a3 = it->second;
        return built;
    }

    SuiteReport run(const std::string& suite)
    {
        SuiteReport out;
        auto append = [&](SuiteReport part) {
            for (auto& r : part)
                out.push_back(std::move(r));
        };
        if (suite == "powers2") {
            ComplexityOracle p(powers_of_two_word(), caps_.prefix_cap);
            append(check_powers2_word(p, cfg_.powers2));
            return out;
        }
        auto c = evaluator(out);
        if (suite == "prop1")
            append(check_power_families(*c, cfg_.k_max));
        else if (suite == "recurrences")
            append(check_recurrences(*c, automata(out), cfg_.recurrence));
        else if (suite == "upper")
            append(check_upper_bound(*c, cfg_.n_max, static_cast<unsigned>(cfg_.k_max)));
        else if (suite == "lower")
            append(check_lower_bound(*c, cfg_.n_max));
        else if (suite == "jchar")
            append(check_j_characterization(*c, cfg_.n_max));
        else if (suite == "lemma6")
            append(check_exceptional_sets(*c, c_rep(out), ExceptionalSetOptions{cfg_.param_max, static_cast<unsigned>(cfg_.k_max)}));
        else
            throw ConfigError("unknown suite '" + suite + "'");
        return out;
    }

private:
    const VerifyConfig& cfg_;
    const Caps& caps_;
    std::shared_ptr<const ComplexityOracle> oracle_;
    EvaluatorPtr brute_;
    EvaluatorPtr evaluator_;
    std::optional<LinearRepresentation> c_rep_;
    VerificationReport certificate_;
    bool certificate_emitted_ = false;
};

int run_verify(const VerifyConfig& cfg, const Caps& caps)
{
    if (cfg.trusted_limit < 190)
        throw ConfigError("--trusted-limit must be at least 190 so base ranges use the oracle");
    std::vector<std::string> suites;
    if (cfg.suite == "all")
        suites = suite_names;
    else if (std::find(suite_names.begin(), suite_names.end(), cfg.suite) != suite_names.end())
        suites = {cfg.suite};
    else
        throw ConfigError("unknown suite '" + cfg.suite + "'");

    VerifyContext ctx(cfg, caps);
    SuiteReport report;
    for (const auto& s : suites)
        for (auto& r : ctx.run(s))
            report.push_back(std::move(r));

    const std::string summary = text_summary(report);
    const std::string json_path = cfg.report.empty() ? "report_" + cfg.suite + ".json" : cfg.report;
    const std::string text_path = cfg.summary.empty() ? "report_" + cfg.suite + ".txt" : cfg.summary;
    write_text_file(json_path, to_json(cfg.suite, report).dump(2) + "\n");
    write_text_file(text_path, summary);
    std::cout << summary;
    const bool ok = all_passed(report);
    std::cout << (ok ? "all claims pass" : "some claims FAILED") << "\n";
    return ok ? exit_ok : exit_claim_failed;
}

// ---------------------------------------------------------------------------
// golden files

int seed_tables(const std::string& dir, const Caps& caps)
{
    std::filesystem::create_directories(dir);
    auto path = [&](const char* name) { return (std::filesystem::path(dir) / name).string(); };

    auto oracle = std::make_shared<const ComplexityOracle>(thue_morse(), caps.prefix_cap);
    std::string csv = "n,c(n)\n";
    auto table = oracle->cyclic_range(0, 19, caps.jobs);
    for (std::size_t n = 0; n < table.size(); ++n)
        csv += std::to_string(n) + "," + std::to_string(table[n]) + "\n";
    write_text_file(path("first_values.csv"), csv);

    LearnOptions opt;
    opt.rank_cap = caps.rank_cap;
    auto c = learn_certified(oracle, opt, 300, caps.jobs);
    if (!c.certificate.passed)
        throw std::runtime_error("learned representation of c disagrees with the oracle");
    write_text_file(path("c.json"), to_json(c.rep).dump(2) + "\n");

    auto a0 = minimize(learn_target(*oracle, parse_target("c(2n)-2c(n)"), opt));
    write_text_file(path("a0.json"), to_json(a0).dump(2) + "\n");
    auto d = dfao_minimize(semigroup_trick(a0, caps.state_cap));
    write_text_file(path("a0.dfao.json"), to_json(d).dump(2) + "\n");
    write_text_file(path("a0.dot"), to_dot(d, "a0"));
    std::cout << "wrote first_values.csv, c.json (rank " << c.rep.rank() << "), a0.json (rank " << a0.rank()
              << "), a0.dfao.json and a0.dot (" << d.state_count() << " states) to " << dir << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cyclic complexity of automatic sequences: exact oracle, linear representations, DFAOs, "
                 "verification suites"};
    app.require_subcommand(0, 1);

    Caps caps;
    std::string seed_dir;
    app.add_option("--jobs", caps.jobs, "Worker threads for oracle ranges")->check(CLI::Range(1u, 256u));
    app.add_option("--prefix-cap", caps.prefix_cap, "Longest stream prefix the oracle may use")
        ->check(CLI::PositiveNumber);
    app.add_option("--rank-cap", caps.rank_cap, "Largest rank learning may produce")->check(CLI::PositiveNumber);
    app.add_option("--state-cap", caps.state_cap, "Largest orbit the semigroup trick may explore")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed-tables", seed_dir, "Write golden files (first values CSV, representations, DFAO) to DIR");

    ComputeConfig compute;
    auto* cmd_compute = app.add_subcommand("compute", "Cyclic complexity values by brute force");
    cmd_compute->add_option("--seq", compute.seq, "tm, p or dfao:<file>");
    cmd_compute->add_option("--n", compute.range, "N or A..B")->required();
    cmd_compute->add_flag("--subword", compute.subword, "Also print subword complexity rho(n)");
    cmd_compute->add_flag("--ratio", compute.ratio, "Also print c(n)/n");
    cmd_compute->add_flag("--csv", compute.csv, "CSV with n, c(n), 3c(n)-4n, 2n-4-c(n)");
    cmd_compute->add_option("--out", compute.out, "Output file ('-' for stdout)");

    LearnConfig learn;
    auto* cmd_learn = app.add_subcommand("learn", "Learn a linear representation from the oracle");
    cmd_learn->add_option("--seq", learn.seq, "tm, p or dfao:<file>");
    cmd_learn->add_option("--target", learn.target, "Expression such as c(n) or c(4n+1)-2c(n+1)-c(2n+1)");
    cmd_learn->add_option("--out", learn.out, "Representation JSON")->required();
    cmd_learn->add_option("--training-depth", learn.training_depth, "Longest digit string queried")
        ->check(CLI::PositiveNumber);
    cmd_learn->add_option("--suffix-depth", learn.suffix_depth, "Longest Hankel suffix");
    cmd_learn->add_flag("--minimize", learn.minimize, "Minimize before writing");

    std::string min_in, min_out;
    auto* cmd_min = app.add_subcommand("minimize", "Minimize a linear representation");
    cmd_min->add_option("--rep", min_in, "Representation JSON")->required()->check(CLI::ExistingFile);
    cmd_min->add_option("--out", min_out, "Output JSON")->required();

    DfaoConfig dfao;
    auto* cmd_dfao = app.add_subcommand("dfao", "Extract a minimal DFAO by the semigroup trick");
    cmd_dfao->add_option("--rep", dfao.rep, "Representation JSON")->required()->check(CLI::ExistingFile);
    cmd_dfao->add_option("--out", dfao.out, "DFAO JSON")->required();
    cmd_dfao->add_option("--dot", dfao.dot, "Graphviz output");
    cmd_dfao->add_option("--name", dfao.name, "Graph name in DOT output");

    VerifyConfig verify;
    auto* cmd_verify = app.add_subcommand("verify", "Run a verification suite");
    cmd_verify->add_option("--suite", verify.suite, "prop1, recurrences, upper, lower, jchar, lemma6, powers2 or all")
        ->required();
    cmd_verify->add_option("--evaluator", verify.evaluator, "auto, brute, rep:<file> or dfao:<file>");
    cmd_verify->add_option("--n-max", verify.n_max, "Upper end of n ranges");
    cmd_verify->add_option("--k-max", verify.k_max, "Largest exponent for power families")->check(CLI::Range(6, 58));
    cmd_verify->add_option("--param-max", verify.param_max, "Largest i, j for exceptional-set families")
        ->check(CLI::Range(5, 20));
    cmd_verify->add_option("--trusted-limit", verify.trusted_limit, "Oracle used for n up to this");
    cmd_verify->add_option("--identity-max", verify.recurrence.identity_max, "Recurrence identities for i up to this");
    cmd_verify->add_option("--bound-max", verify.recurrence.bound_max, "Remainder bounds for i up to this");
    cmd_verify->add_option("--zero-set-max", verify.recurrence.zero_set_max, "a1 zero set for m up to this");
    cmd_verify->add_option("--powers-max-exp", verify.powers2.n_max_exp, "c_p(2^n) for n up to this");
    cmd_verify->add_option("--probe-exp", verify.powers2.probe_exp, "Growth probe over n up to 2^this");
    cmd_verify->add_option("--remainder", verify.remainders, "Use a DFAO file for a remainder: a0:<file>");
    cmd_verify->add_option("--report", verify.report, "Report JSON (default report_<suite>.json)");
    cmd_verify->add_option("--summary", verify.summary, "Text summary (default report_<suite>.txt)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (!seed_dir.empty())
            seed_tables(seed_dir, caps);
        if (cmd_compute->parsed())
            return run_compute(compute, caps);
        if (cmd_learn->parsed())
            return run_learn(learn, caps);
        if (cmd_min->parsed())
            return run_minimize(min_in, min_out);
        if (cmd_dfao->parsed())
            return run_dfao(dfao, caps);
        if (cmd_verify->parsed())
            return run_verify(verify, caps);
        if (seed_dir.empty()) {
            std::cerr << app.help();
            return exit_config;
        }
        return exit_ok;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
}
