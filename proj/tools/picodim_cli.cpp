#include "picodim/algebra_io.hpp"
#include "picodim/engine.hpp"
#include "picodim/errors.hpp"
#include "picodim/poly_parser.hpp"
#include "picodim/sequence.hpp"
#include "picodim/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace picodim;
using nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParameter("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw InvalidParameter("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::pair<int, int> parse_range(const std::string& text) {
    auto number = [&](const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6)
            throw InvalidParameter("bad degree range '" + text + "' (expected n or a..b)");
        return std::stoi(s);
    };
    int lo, hi;
    if (auto dots = text.find(".."); dots != std::string::npos) {
        lo = number(text.substr(0, dots));
        hi = number(text.substr(dots + 2));
    } else {
        lo = hi = number(text);
    }
    if (lo < 1 || hi < lo) throw InvalidParameter("bad degree range '" + text + "' (need 1 <= a <= b)");
    return {lo, hi};
}

std::optional<MonomialMode> parse_mode(const std::string& s) {
    if (s == "auto") return std::nullopt;
    if (s == "leftnormed") return MonomialMode::LeftNormed;
    return MonomialMode::Full;
}

FieldStrategy parse_field(const std::string& s) {
    if (s == "rational") return FieldStrategy::Rational;
    if (s == "modular") return FieldStrategy::Modular;
    return FieldStrategy::Auto;
}

ordered_json labels(const AlgebraSpec& a, const std::vector<std::uint32_t>& idx) {
    ordered_json arr = ordered_json::array();
    for (auto i : idx) arr.push_back(a.basis().at(i).str());
    return arr;
}

ordered_json element_json(const AlgebraSpec& a, const Element& e) {
    ordered_json j = ordered_json::object();
    for (const auto& [i, q] : e.terms()) j[a.basis().at(i).str()] = to_string(q);
    return j;
}

struct CodimArgs {
    std::string algebra;
    std::string n = "1..4";
    std::string mode = "auto";
    std::string field = "auto";
    int threads = 1;
    std::string out;
    std::string format = "csv";
};

int cmd_codim(const CodimArgs& args) {
    AlgebraSpec A = parse_descriptor(args.algebra);
    auto [lo, hi] = parse_range(args.n);
    EngineConfig cfg;
    cfg.threads = args.threads;
    cfg.rank.field = parse_field(args.field);
    ordered_json rows = ordered_json::array();
    std::ostringstream csv;
    csv << "n,mode,dim_pn,c_n,certification\n";
    std::cout << std::left << std::setw(4) << "n" << std::setw(12) << "mode" << std::setw(14) << "dim P_n"
              << std::setw(12) << "c_n" << "certification\n";
    for (int n = lo; n <= hi; ++n) {
        CodimResult r = codim(A, n, parse_mode(args.mode), cfg);
        const std::string cert = to_string(r.info.certification);
        std::cout << std::setw(4) << n << std::setw(12) << to_string(r.mode) << std::setw(14) << r.dim_pn
                  << std::setw(12) << r.rank << cert << "\n";
        csv << n << ',' << to_string(r.mode) << ',' << r.dim_pn << ',' << r.rank << ',' << cert << "\n";
        rows.push_back({{"n", n},
                        {"mode", to_string(r.mode)},
                        {"dim_pn", r.dim_pn},
                        {"c_n", r.rank},
                        {"certification", cert},
                        {"field", to_string(r.info.field)},
                        {"rows", r.rows},
                        {"cols", r.cols}});
    }
    if (!args.out.empty()) {
        ordered_json doc{{"algebra", args.algebra}, {"dim", A.dim()}, {"results", rows}};
        write_text(args.out, args.format == "json" ? doc.dump(2) + "\n" : csv.str());
    }
    return 0;
}

struct IdentityArgs {
    std::string algebra;
    std::string poly;
    bool unital = false;
    int threads = 1;
    std::string out;
};

int cmd_identity(const IdentityArgs& args) {
    AlgebraSpec A = parse_descriptor(args.algebra);
    MultilinearPoly f = parse_poly(args.poly);
    EngineConfig cfg;
    cfg.threads = args.threads;
    ordered_json doc{{"algebra", args.algebra}, {"poly", format_poly(f)}, {"degree", f.degree()}};

    // With --unital the direct test runs on A# and the components of
    // f(1 + x_1, ..., 1 + x_n) run on A.
    const AlgebraSpec target = args.unital ? unitalize(A) : A;
    IdentityResult r = is_identity(target, f, cfg);
    doc["identity"] = r.holds;
    std::cout << format_poly(f) << (r.holds ? " is an identity" : " is not an identity")
              << (args.unital ? " of the unital hull" : "") << "\n";
    if (!r.holds) {
        doc["witness"] = labels(target, r.witness);
        doc["value"] = element_json(target, r.value);
        std::cout << "witness: " << doc["witness"].dump() << " -> " << doc["value"].dump() << "\n";
    }
    if (args.unital) {
        ordered_json comps = ordered_json::array();
        bool all = true;
        for (const auto& [vars, g] : expand_unital(f)) {
            IdentityResult c = is_identity(A, g, cfg);
            all = all && c.holds;
            ordered_json e{{"variables", vars}, {"poly", format_poly(g)}, {"identity", c.holds}};
            if (!c.holds) e["witness"] = labels(A, c.witness);
            std::cout << "  component " << ordered_json(vars).dump() << ": " << format_poly(g) << " -> "
                      << (c.holds ? "identity" : "not an identity") << "\n";
            comps.push_back(std::move(e));
        }
        doc["components"] = std::move(comps);
        doc["components_all_identities"] = all;
        doc["agree"] = all == r.holds;
        std::cout << "all components identities: " << (all ? "yes" : "no")
                  << (all == r.holds ? " (agrees)" : " (DISAGREES)") << "\n";
        if (all != r.holds) return kExitFail;
    }
    if (!args.out.empty()) write_text(args.out, doc.dump(2) + "\n");
    return 0;
}

struct SequenceArgs {
    std::string alpha;
    int steps = 2;
    std::string mode = "bound";
    std::string t1;
    long precision = 128;
    long precision_cap = 8192;
    std::string out;
    std::string verify_plan;
};

int print_verification(const PlanVerification& v) {
    for (const auto& item : v.items)
        std::cout << std::left << std::setw(6) << item.status << item.name << (item.detail.empty() ? "" : "  ")
                  << item.detail << "\n";
    std::cout << (v.passed() ? "plan verified" : "plan verification FAILED") << "\n";
    return v.passed() ? 0 : kExitFail;
}

int cmd_sequence(const SequenceArgs& args) {
    SequenceOptions opts;
    opts.ladder.start = args.precision;
    opts.ladder.cap = args.precision_cap;
    if (args.precision < 32 || args.precision_cap < args.precision)
        throw InvalidParameter("precision must be at least 32 bits and not exceed the precision cap");

    if (!args.verify_plan.empty()) {
        ordered_json doc;
        try {
            doc = ordered_json::parse(read_text(args.verify_plan));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("plan file: ") + e.what(), e.byte);
        }
        return print_verification(verify_plan(SequencePlan::from_json(doc), opts));
    }
    if (args.alpha.empty()) throw InvalidParameter("--alpha is required unless --verify-plan is given");
    if (!args.t1.empty()) {
        const Rational t1 = parse_rational(args.t1);
        if (t1.get_den() != 1) throw InvalidParameter("--T1 must be an integer");
        opts.T1_override = BigInt(t1.get_num());
    }

    SequencePlan plan = build_plan(parse_rational(args.alpha), args.steps, sequence_mode_from_string(args.mode), opts);
    auto brief = [](const BigInt& z) {
        std::string s = z.get_str();
        if (s.size() <= 40) return s;
        return s.substr(0, 12) + "... (" + std::to_string(s.size()) + " digits)";
    };
    std::cout << "alpha = " << to_string(plan.alpha) << ", mode " << to_string(plan.mode)
              << (plan.toy ? " (toy plan)" : "") << "\n";
    for (std::size_t j = 0; j < plan.stages.size(); ++j) {
        const auto& s = plan.stages[j];
        std::cout << "T_" << j + 1 << " = " << brief(s.T) << (s.T_minimal ? "" : " (certified, not minimal)");
        if (s.N) {
            std::cout << "   N_" << j + 1 << " ";
            if (s.N->lo == s.N->hi) std::cout << "= " << brief(s.N->lo);
            else std::cout << "in [" << brief(s.N->lo) << ", " << brief(s.N->hi) << "]";
        }
        std::cout << "\n";
    }
    for (const auto& note : plan.notes) std::cout << "note: " << note << "\n";
    if (!args.out.empty()) write_text(args.out, plan.to_json().dump(2) + "\n");
    return 0;
}

struct VerifyArgs {
    std::vector<std::string> suites{"default"};
    std::string out;
    std::string format = "json";
    int threads = 1;
    std::string mutation = "none";
    bool no_runtime = false;
};

int cmd_verify(const VerifyArgs& args) {
    VerifyConfig cfg;
    cfg.suites = args.suites;
    cfg.engine.threads = args.threads;
    cfg.mutation = mutation_from_string(args.mutation);
    Report report = run_suite(cfg);
    const std::string text = emit(report, args.format, !args.no_runtime);
    std::size_t fails = 0, skipped = 0;
    for (const auto& r : report.records) {
        if (r.verdict == "fail") ++fails;
        else if (r.verdict != "pass") ++skipped;
        if (!args.out.empty()) std::cout << std::left << std::setw(15) << r.verdict << r.name << "\n";
    }
    if (args.out.empty()) std::cout << text;
    else write_text(args.out, text);
    std::cerr << report.records.size() << " checks, " << fails << " failed, " << skipped << " skipped\n";
    return report.exit_code();
}

struct AlgebraArgs {
    std::string algebra;
    std::string out;
};

int cmd_algebra(const AlgebraArgs& args) {
    AlgebraSpec A = parse_descriptor(args.algebra);
    write_text(args.out, algebra_to_json(A).dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Codimension growth of nonassociative algebras: exact codimensions, identities, "
                 "certified bounds and the threshold sequence"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    const std::vector<std::string> modes{"auto", "leftnormed", "full"};
    const std::vector<std::string> fields{"auto", "rational", "modular"};

    CodimArgs ca;
    auto* codim_cmd = app.add_subcommand("codim", "codimensions c_n for a degree range");
    codim_cmd->add_option("--algebra", ca.algebra, "algebra descriptor")->required();
    codim_cmd->add_option("--n", ca.n, "degree n or range a..b")->capture_default_str();
    codim_cmd->add_option("--mode", ca.mode, "monomial enumeration")->check(CLI::IsMember(modes))->capture_default_str();
    codim_cmd->add_option("--field", ca.field, "rank strategy")->check(CLI::IsMember(fields))->capture_default_str();
    codim_cmd->add_option("--threads", ca.threads, "worker threads")->check(CLI::Range(1, 256));
    codim_cmd->add_option("--out", ca.out, "also write results to this file");
    codim_cmd->add_option("--format", ca.format, "file format")->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    IdentityArgs ia;
    auto* id_cmd = app.add_subcommand("identity", "test a multilinear polynomial identity");
    id_cmd->add_option("--algebra", ia.algebra, "algebra descriptor")->required();
    id_cmd->add_option("--poly", ia.poly, "polynomial, e.g. 'x1(x2x3) - 2*x2x1x3'")->required();
    id_cmd->add_flag("--unital", ia.unital, "also check every component of f(1+x_1,...,1+x_n)");
    id_cmd->add_option("--threads", ia.threads, "worker threads")->check(CLI::Range(1, 256));
    id_cmd->add_option("--out", ia.out, "write the result as JSON");

    SequenceArgs sa;
    auto* seq_cmd = app.add_subcommand("sequence", "build or re-verify a threshold plan");
    seq_cmd->add_option("--alpha", sa.alpha, "target exponent, rational > 1 (e.g. 3 or 5/2)");
    seq_cmd->add_option("--steps", sa.steps, "complete stages before the closing threshold")
        ->check(CLI::Range(1, 16))->capture_default_str();
    seq_cmd->add_option("--mode", sa.mode, "bound or exact")->check(CLI::IsMember({"bound", "exact"}))
        ->capture_default_str();
    seq_cmd->add_option("--T1", sa.t1, "override the first threshold (toy plan)")
        ->check(CLI::TypeValidator<unsigned long>());
    seq_cmd->add_option("--precision", sa.precision, "starting MPFR precision in bits")->capture_default_str();
    seq_cmd->add_option("--precision-cap", sa.precision_cap, "largest MPFR precision in bits")->capture_default_str();
    seq_cmd->add_option("--out", sa.out, "write the plan JSON here");
    seq_cmd->add_option("--verify-plan", sa.verify_plan, "re-verify an existing plan file instead of building one");

    VerifyArgs va;
    auto* ver_cmd = app.add_subcommand("verify", "run check suites and emit a report");
    std::vector<std::string> suite_choices{"default", "all"};
    for (const auto& s : suite_names()) suite_choices.push_back(s);
    ver_cmd->add_option("--suite", va.suites, "suite names (repeatable)")->check(CLI::IsMember(suite_choices))
        ->capture_default_str();
    ver_cmd->add_option("--out", va.out, "report file (stdout when absent)");
    ver_cmd->add_option("--format", va.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    ver_cmd->add_option("--threads", va.threads, "worker threads")->check(CLI::Range(1, 256));
    std::vector<std::string> mutation_choices{"none"};
    for (auto m : all_mutations()) mutation_choices.push_back(to_string(m));
    ver_cmd->add_option("--mutation", va.mutation, "corrupt one table entry")
        ->check(CLI::IsMember(mutation_choices))->capture_default_str();
    ver_cmd->add_flag("--no-runtime", va.no_runtime, "omit runtime_ms from the report");

    AlgebraArgs aa;
    auto* alg_cmd = app.add_subcommand("algebra", "print the structure constants of a descriptor as JSON");
    alg_cmd->add_option("--algebra", aa.algebra, "algebra descriptor")->required();
    alg_cmd->add_option("--out", aa.out, "output file (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*codim_cmd) return cmd_codim(ca);
        if (*id_cmd) return cmd_identity(ia);
        if (*seq_cmd) return cmd_sequence(sa);
        if (*ver_cmd) return cmd_verify(va);
        if (*alg_cmd) return cmd_algebra(aa);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidParameter& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kExitFail;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitConfig;
}
