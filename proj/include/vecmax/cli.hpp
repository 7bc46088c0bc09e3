#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vecmax/certificate.hpp"
#include "vecmax/ekeland.hpp"
#include "vecmax/error.hpp"
#include "vecmax/gauge.hpp"
#include "vecmax/io.hpp"
#include "vecmax/maximal.hpp"
#include "vecmax/props.hpp"
#include "vecmax/validate.hpp"
#include "vecmax/version.hpp"

namespace vecmax::cli {

/// Exit codes. No other values are returned by run().
enum ExitCode : int {
    kOk = 0,
    kValidationFailure = 2,
    kVerificationFailure = 3,
    kNoCertificate = 4,
};

struct RunConfig {
    std::string command;  // validate | gauge-eval | solve | verify | ekeland | props
    std::string instance_path;
    std::string certificate_path;
    std::string y;  // gauge-eval: comma-separated entries
    std::string mode = "t2";
    std::size_t start_index = 0;
    std::string engine;              // scc | bb | gauge; empty picks scc for t2, gauge for t3
    std::string potential = "phi";   // bb engine: phi | y:<i>
    double tol = GaugeContext<double>::kDefaultTol;
    double s_max = GaugeContext<double>::kDefaultSMax;
    std::uint64_t seed = SamplingPolicy{}.seed;
    std::size_t samples = 1000;
    std::string output = "json";  // json | text
    std::string out_path;
    unsigned threads = 1;
    bool exact = false;
    bool timing = false;
    std::string eps;  // ekeland: overrides "eps" in the input file
};

/// Report of one run: command and config echo, verdicts, witnesses, result payload.
struct Report {
    std::string command;
    json config;
    std::string status = "ok";
    int exit_code = kOk;
    std::vector<json> verdicts;
    std::vector<std::string> witnesses;
    json result = json::object();
    std::vector<std::string> notes;
    std::string error;
    std::optional<double> timing_ms;

    json to_json() const {
        json j;
        j["schema"] = kSchemaVersion;
        j["library"] = json{{"name", kLibraryName}, {"version", kVersion}};
        j["command"] = command;
        j["config"] = config;
        j["status"] = status;
        j["exit_code"] = exit_code;
        j["verdicts"] = verdicts;
        j["witnesses"] = witnesses;
        j["result"] = result;
        if (!notes.empty()) j["notes"] = notes;
        if (!error.empty()) j["error"] = error;
        if (timing_ms) j["timing_ms"] = *timing_ms;
        return j;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << kLibraryName << ' ' << kVersion << '\n';
        os << "command: " << command << '\n';
        os << "config: " << config.dump() << '\n';
        os << "status: " << status << " (exit " << exit_code << ")\n";
        if (!error.empty()) os << "error: " << error << '\n';
        for (const auto& v : verdicts) {
            os << (v.value("pass", false) ? "PASS " : "FAIL ") << v.value("name", std::string("?"));
            if (v.contains("method")) os << " [" << v["method"].get<std::string>() << ", " << v["samples"].dump() << " samples]";
            if (v.contains("witness")) os << ": " << v["witness"].get<std::string>();
            os << '\n';
        }
        for (const auto& w : witnesses) os << "witness: " << w << '\n';
        for (const auto& n : notes) os << "note: " << n << '\n';
        for (auto it = result.begin(); it != result.end(); ++it) os << it.key() << ": " << it.value().dump() << '\n';
        if (timing_ms) os << "timing_ms: " << *timing_ms << '\n';
        return os.str();
    }

    void fail(int code, std::string st) {
        if (exit_code == kOk) {
            exit_code = code;
            status = std::move(st);
        }
    }
};

namespace detail {

inline json config_echo(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["instance"] = c.instance_path;
    if (!c.certificate_path.empty()) j["certificate"] = c.certificate_path;
    if (c.command == "gauge-eval") j["y"] = c.y;
    if (c.command == "solve") j["mode"] = c.mode;
    if (c.command == "solve" || c.command == "ekeland") j["start"] = c.start_index;
    if (c.command == "solve") {
        j["engine"] = !c.engine.empty() ? c.engine : (c.mode == "t2" ? "scc" : "gauge");
        j["potential"] = c.potential;
    }
    if (c.command == "ekeland" && !c.eps.empty()) j["eps"] = c.eps;
    j["tol"] = c.tol;
    j["smax"] = c.s_max;
    j["seed"] = c.seed;
    if (c.command == "props") j["samples"] = c.samples;
    j["exact"] = c.exact;
    j["output"] = c.output;
    return j;
}

inline void add_law_report(Report& r, const LawReport& rep) {
    for (const auto& c : rep.checks) {
        r.verdicts.push_back(law_check_to_json(c));
        if (!c.pass) r.witnesses.push_back(c.law + ": " + c.witness);
    }
}

inline void add_verdicts(Report& r, const std::vector<CheckVerdict>& checks) {
    for (const auto& v : checks) {
        r.verdicts.push_back(verdict_to_json(v));
        for (const auto& w : v.witnesses) r.witnesses.push_back(v.name + ": " + w);
    }
}

template <class T>
BasicVector<T> parse_vector_arg(const std::string& text) {
    std::vector<T> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw ParseError("--y: empty entry in \"" + text + "\"");
        item = item.substr(b, e - b + 1);
        if constexpr (is_exact_v<T>) {
            v.push_back(vecmax::detail::parse_rational(item, "--y"));
        } else {
            char* end = nullptr;
            const double d = std::strtod(item.c_str(), &end);
            if (end == item.c_str() || *end != '\0') throw ParseError("--y: not a number: \"" + item + "\"");
            v.push_back(d);
        }
    }
    if (v.empty()) throw ParseError("--y: no entries");
    return BasicVector<T>(std::move(v));
}

template <class T>
T parse_scalar_arg(const std::string& text, const char* flag) {
    if constexpr (is_exact_v<T>) {
        return vecmax::detail::parse_rational(text, flag);
    } else {
        char* end = nullptr;
        const double d = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0') throw ParseError(std::string(flag) + ": not a number: \"" + text + "\"");
        return d;
    }
}

/// Validation verdicts into the report; true when all hypotheses hold.
template <class T>
bool validate_into(Report& r, const Instance<T>& inst, const RunConfig& c) {
    SamplingPolicy policy;
    policy.seed = c.seed;
    const auto rep = validate_instance(inst, ValidationOptions{policy, kDefaultPointCap, c.threads});
    add_law_report(r, rep);
    if (!rep.pass()) r.fail(kValidationFailure, "validation failure");
    return rep.pass();
}

template <class T>
GaugeContext<T> make_context(const Instance<T>& inst, const RunConfig& c) {
    return GaugeContext<T>::make(inst.cone_k(), inst.cone_h(), inst.scaling(), c.tol, c.s_max);
}

template <class T>
void cmd_validate(Report& r, const RunConfig& c) {
    const auto inst = instance_from_json<T>(load_json_file(c.instance_path));
    validate_into(r, inst, c);
    const auto b = bounded_below_check(inst);
    json bj;
    bj["status"] = to_string(b.status);
    bj["synthesized"] = b.synthesized;
    if (b.lower_bound) bj["lower_bound"] = vector_to_json(*b.lower_bound);
    json viol = json::array();
    for (auto i : b.violating) viol.push_back(i);
    bj["violating"] = viol;
    r.result["bounded_below"] = bj;
    r.verdicts.push_back(law_check_to_json(archimedean_probe(inst.cone_h())));
    r.result["points"] = inst.size();
    r.result["dim"] = inst.dim();
}

template <class T>
void cmd_gauge_eval(Report& r, const RunConfig& c) {
    const auto inst = instance_from_json<T>(load_json_file(c.instance_path));
    const auto y = parse_vector_arg<T>(c.y);
    const auto ctx = make_context(inst, c);
    const auto g = gamma_eval(ctx, y);
    r.result["y"] = vector_to_json(y);
    r.result["gamma"] = extended_to_json(g);
}

template <class T>
Potential<T> parse_potential(const std::string& s) {
    if (s == "phi") return Potential<T>::phi();
    if (s.rfind("y:", 0) == 0) {
        char* end = nullptr;
        const auto i = std::strtoul(s.c_str() + 2, &end, 10);
        if (end != s.c_str() + 2 && *end == '\0') return Potential<T>::y_component(i);
    }
    throw ParseError("--potential: expected \"phi\" or \"y:<index>\", got \"" + s + "\"");
}

template <class T>
void cmd_solve(Report& r, const RunConfig& c) {
    const auto inst = instance_from_json<T>(load_json_file(c.instance_path));
    if (c.start_index >= inst.size()) {
        r.fail(kValidationFailure, "validation failure");
        r.error = "start index " + std::to_string(c.start_index) + " out of range (|A| = " + std::to_string(inst.size()) + ")";
        return;
    }
    if (c.mode != "t2" && c.mode != "t3") throw ParseError("--mode: expected t2 or t3");
    if (!validate_into(r, inst, c)) return;
    r.verdicts.push_back(law_check_to_json(archimedean_probe(inst.cone_h())));
    r.notes.push_back("A is finite: every ascending sequence in A enters a sink component, so the upper-bound "
                      "conditions on ascending sequences hold automatically");

    const std::string engine = !c.engine.empty() ? c.engine : (c.mode == "t2" ? "scc" : "gauge");
    const SolverOptions opt{kDefaultPointCap, c.threads};
    std::optional<GaugeContext<T>> ctx;
    const bool wants_phi = c.mode == "t3" || (engine == "bb" && c.potential == "phi");
    if (wants_phi) ctx = make_context(inst, c);

    std::optional<MaximalCertificate<T>> cert;
    if (engine == "scc") {
        if (c.mode != "t2") throw ParseError("--engine scc produces t2 certificates; use --mode t2");
        cert = find_maximal_scc(inst, c.start_index, opt);
    } else if (engine == "bb") {
        const auto pot = parse_potential<T>(c.potential);
        if (c.mode == "t3" && pot.kind != Potential<T>::Kind::phi) {
            throw ParseError("--mode t3 with --engine bb needs --potential phi");
        }
        cert = find_maximal_bb(inst, c.start_index, pot, SlackSchedule{}, ctx ? &*ctx : nullptr, opt);
    } else if (engine == "gauge") {
        if (c.mode != "t3") throw ParseError("--engine gauge produces t3 certificates; use --mode t3");
        cert = find_maximal_gauge(inst, *ctx, c.start_index, opt);
    } else {
        throw ParseError("--engine: expected scc, bb or gauge");
    }
    add_verdicts(r, cert->checks);
    r.result["certificate"] = certificate_to_json(*cert);
    if (ctx) {
        r.result["phi_start"] = extended_to_json(shifted_phi(inst, *ctx, cert->start.point));
        r.result["phi_answer"] = extended_to_json(shifted_phi(inst, *ctx, cert->answer.point));
    }
    if (!cert->valid()) r.fail(kVerificationFailure, "verification failure");
}

template <class T>
void cmd_verify(Report& r, const RunConfig& c) {
    const auto inst = instance_from_json<T>(load_json_file(c.instance_path));
    if (c.certificate_path.empty()) throw ParseError("verify needs --certificate");
    const auto cert = certificate_from_json<T>(load_json_file(c.certificate_path));
    std::optional<GaugeContext<T>> ctx;
    if (cert.mode == Mode::t3) ctx = make_context(inst, c);
    const auto rep = verify_certificate(inst, cert, ctx ? &*ctx : nullptr);
    add_verdicts(r, rep.checks);
    r.result["mode"] = to_string(cert.mode);
    r.result["answer"] = indexed_to_json(cert.answer);
    if (!rep.pass()) r.fail(kVerificationFailure, "verification failure");
}

template <class T>
void cmd_ekeland(Report& r, const RunConfig& c) {
    const auto in = ekeland_from_json<T>(load_json_file(c.instance_path));
    std::optional<T> eps = in.eps;
    if (!c.eps.empty()) eps = parse_scalar_arg<T>(c.eps, "--eps");
    if (!eps) throw ParseError("ekeland: no eps in the input and no --eps flag");

    LawCheck metric{"metric axioms", true, Method::exhaustive};
    const auto mrep = in.space.validate();
    metric.samples = in.space.size();
    if (!mrep.valid) {
        const auto& v = mrep.violations.front();
        metric.fail(std::string(to_string(v.axiom)) + " violation (" + std::to_string(v.i) + "," + std::to_string(v.j) +
                    "," + std::to_string(v.k) + "): " + v.message);
    }
    r.verdicts.push_back(law_check_to_json(metric));
    if (!metric.pass) {
        r.witnesses.push_back("metric axioms: " + metric.witness);
        r.fail(kValidationFailure, "validation failure");
        return;
    }
    if (c.start_index >= in.f.size()) {
        r.fail(kValidationFailure, "validation failure");
        r.error = "start index " + std::to_string(c.start_index) + " out of range (|X| = " + std::to_string(in.f.size()) + ")";
        return;
    }
    const auto res = ekeland_solve(in.space, in.f, *eps, c.start_index, SolverOptions{kDefaultPointCap, c.threads});
    add_verdicts(r, res.certificate.checks);
    CheckVerdict descent{"f(start) >= f(answer) + eps*d(start, answer)"};
    if (!res.descent) descent.fail("descent inequality fails at #" + std::to_string(res.index));
    CheckVerdict strict{"no x != answer with f(answer) >= f(x) + eps*d(answer, x)"};
    for (auto x : res.strict_witnesses) strict.fail("x = " + std::to_string(x));
    add_verdicts(r, {descent, strict});
    r.result["answer"] = res.index;
    r.result["f_answer"] = scalar_to_json(in.f[res.index]);
    r.result["eps"] = scalar_to_json(*eps);
    r.result["certificate"] = certificate_to_json(res.certificate);
    if (!res.valid()) r.fail(kVerificationFailure, "verification failure");
}

template <class T>
void cmd_props(Report& r, const RunConfig& c) {
    const auto inst = instance_from_json<T>(load_json_file(c.instance_path));
    if (!validate_into(r, inst, c)) return;
    r.verdicts.clear();
    const auto ctx = make_context(inst, c);
    const auto rep = props_suite(inst, ctx, PropsOptions{c.seed, c.samples, kDefaultPointCap, c.threads});
    add_law_report(r, rep);
    std::size_t failed = 0;
    for (const auto& ch : rep.checks) failed += ch.pass ? 0 : 1;
    r.result["laws"] = rep.checks.size();
    r.result["failed"] = failed;
    if (!rep.pass()) r.fail(kVerificationFailure, "verification failure");
}

template <class T>
void dispatch(Report& r, const RunConfig& c) {
    if (c.command == "validate") return cmd_validate<T>(r, c);
    if (c.command == "gauge-eval") return cmd_gauge_eval<T>(r, c);
    if (c.command == "solve") return cmd_solve<T>(r, c);
    if (c.command == "verify") return cmd_verify<T>(r, c);
    if (c.command == "ekeland") return cmd_ekeland<T>(r, c);
    if (c.command == "props") return cmd_props<T>(r, c);
    throw ParseError("unknown command \"" + c.command + "\"");
}

}  // namespace detail

/// Executes one command and fills the report. Input, construction and precondition errors map
/// to exit 2, failed verdicts to 3, a start point outside the domain to 4.
inline Report execute(const RunConfig& c) {
    Report r;
    r.command = c.command;
    r.config = detail::config_echo(c);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (c.exact) {
            detail::dispatch<Rational>(r, c);
        } else {
            detail::dispatch<double>(r, c);
        }
    } catch (const NotInDomain& e) {
        r.fail(kNoCertificate, "no certificate");
        r.error = e.what();
    } catch (const NonTermination& e) {
        r.fail(kNoCertificate, "no certificate");
        r.error = e.what();
    } catch (const SubadditivityViolation& e) {
        r.fail(kValidationFailure, "validation failure");
        r.error = e.what();
        r.witnesses.push_back("subadditivity counterexample: t1 = 1, t2 = 1, Lambda(2) = 2^" +
                              ScalarTraits<double>::to_string(e.exponent()) + " Lambda(1)");
    } catch (const Error& e) {
        r.fail(kValidationFailure, "validation failure");
        r.error = e.what();
    } catch (const json::exception& e) {
        r.fail(kValidationFailure, "validation failure");
        r.error = std::string("malformed input: ") + e.what();
    }
    if (c.timing) {
        r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    return r;
}

/// Runs a command, writes the report to `out` (and to --out when given) and returns the exit code.
inline int run(const RunConfig& c, std::ostream& out) {
    const Report r = execute(c);
    const std::string text = c.output == "text" ? r.to_text() : r.to_json().dump(2) + "\n";
    out << text;
    if (!c.out_path.empty()) {
        std::ofstream f(c.out_path, std::ios::binary);
        f << text;
    }
    return r.exit_code;
}

/// Parses argv into a config. Returns an exit code when the program should stop right away
/// (help: 0, usage error: 2).
inline std::optional<int> parse_args(int argc, const char* const* argv, RunConfig& c, std::ostream& out,
                                     std::ostream& err) {
    CLI::App app{"Maximal points of finite sets under cone quasi-orders, with certificates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kLibraryName) + " " + kVersion);

    auto common = [&c](CLI::App* s, bool needs_instance = true) {
        auto* opt = s->add_option("--instance", c.instance_path, "instance JSON file");
        if (needs_instance) opt->required();
        s->add_option("--tol", c.tol, "gauge enclosure width")->check(CLI::PositiveNumber);
        s->add_option("--smax", c.s_max, "gauge unboundedness cap")->check(CLI::Range(1.0, 1e300));
        s->add_option("--seed", c.seed, "seed of every sampled check");
        s->add_option("--output", c.output, "report format")->check(CLI::IsMember({"json", "text"}));
        s->add_option("--out", c.out_path, "also write the report to this file");
        s->add_option("--threads", c.threads, "workers for the order graph")->check(CLI::Range(1U, 256U));
        s->add_flag("--exact", c.exact, "rational arithmetic (linear scaling only)");
        s->add_flag("--timing", c.timing, "add wall-clock timing to the report");
    };

    auto* validate = app.add_subcommand("validate", "check every hypothesis of an instance");
    common(validate);
    auto* gauge = app.add_subcommand("gauge", "gauge function tools");
    gauge->require_subcommand(1);
    auto* geval = gauge->add_subcommand("eval", "evaluate the gauge at a vector");
    common(geval);
    geval->add_option("--y", c.y, "comma-separated vector")->required();
    auto* solve = app.add_subcommand("solve", "find a maximal point with a certificate");
    common(solve);
    solve->add_option("--mode", c.mode, "t2 or t3")->check(CLI::IsMember({"t2", "t3"}));
    solve->add_option("--start", c.start_index, "index of the start point in A");
    solve->add_option("--engine", c.engine, "scc, bb or gauge")->check(CLI::IsMember({"scc", "bb", "gauge"}));
    solve->add_option("--potential", c.potential, "bb engine potential: phi or y:<i>");
    auto* verify = app.add_subcommand("verify", "re-check a certificate against an instance");
    common(verify);
    verify->add_option("--certificate", c.certificate_path, "certificate JSON file")->required();
    verify->add_option("--mode", c.mode, "ignored; the certificate carries its mode");
    auto* ekeland = app.add_subcommand("ekeland", "scalar variational principle on a finite metric space");
    common(ekeland);
    ekeland->add_option("--start", c.start_index, "start index in X");
    ekeland->add_option("--eps", c.eps, "positive slope; overrides the input file");
    auto* props = app.add_subcommand("props", "seeded property suite");
    common(props);
    props->add_option("--samples", c.samples, "samples per sampled law")->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    }

    if (validate->parsed()) c.command = "validate";
    if (geval->parsed()) c.command = "gauge-eval";
    if (solve->parsed()) c.command = "solve";
    if (verify->parsed()) c.command = "verify";
    if (ekeland->parsed()) c.command = "ekeland";
    if (props->parsed()) c.command = "props";
    return std::nullopt;
}

}  // namespace vecmax::cli
