#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ccqbf/ccqbf.hpp"
#include "json.hpp"

namespace ccqbf::cli {

namespace {

using json = nlohmann::json;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IOError("cannot write '" + path + "'");
    file << text;
}

// flag value if given, else the environment variable, else the default
std::size_t setting(const std::optional<std::size_t>& flag, const char* env, std::size_t fallback) {
    if (flag) return *flag;
    if (const char* v = std::getenv(env); v && *v) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end && *end == '\0') return static_cast<std::size_t>(parsed);
        throw ParamError(std::string(env) + " must be a non-negative integer, got '" + v + "'");
    }
    return fallback;
}

std::string var_list(const std::set<Var>& vars) {
    std::string out;
    for (Var v : vars) out += " x" + std::to_string(v.id);
    return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
}

// ---- solve

struct SolveArgs {
    std::string file;
    std::string algorithm = "auto";
    std::string cls;
    std::string strategy;
    std::optional<std::size_t> brute_cap;
};

int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
    ParseOptions po;
    if (!a.cls.empty()) po.cls = parse_base_class(a.cls);
    auto report = parse_qdimacs_report(read_input(a.file), po);
    print_warnings(report.warnings, err);
    const auto& f = report.formula;

    DispatchOptions opts;
    opts.algorithm = parse_algorithm(a.algorithm);
    opts.brute_cap = setting(a.brute_cap, "QBD_BRUTE_CAP", kDefaultBruteCap);

    const auto start = std::chrono::steady_clock::now();
    const Verdict v = dispatch(f, opts);
    const double ms = elapsed_ms(start);

    out << "s " << (v.value ? "TRUE" : "FALSE") << '\n';
    out << "c algorithm " << to_string(v.algorithm) << '\n';
    if (v.cls) out << "c class " << to_string(*v.cls) << '\n';
    out << "c k " << v.stats.initial_k << '\n';
    out << "c n " << f.prefix.size() << '\n';
    out << "c branch_nodes " << v.stats.branch_nodes << '\n';
    out << "c leaves " << v.stats.leaves << '\n';
    out << "c max_depth " << v.stats.max_depth << '\n';
    out << "c time_ms " << ms << '\n';
    if (!v.explanation.empty()) out << "c note " << v.explanation << '\n';

    if (!a.strategy.empty()) {
        StrategyOptions so;
        so.cap = opts.brute_cap;
        const auto tree = extract_strategy(f, so);
        write_output(a.strategy, to_string(tree) + "\n", out);
    }
    return v.value ? kExitTrue : kExitFalse;
}

// ---- detect

int do_detect(const std::string& file, const std::string& cls, std::ostream& out, std::ostream& err) {
    auto report = parse_qdimacs_report(read_input(file));
    print_warnings(report.warnings, err);
    const auto atoms = all_atoms(report.formula.matrix);
    const auto d = detect_cc_backdoor(atoms, parse_base_class(cls));
    out << "k=" << d.k() << ":" << var_list(d.backdoor_vars) << '\n';
    return 0;
}

// ---- kernelize

int do_kernelize(const std::string& file, const std::string& path, std::ostream& out, std::ostream& err) {
    ParseOptions po;
    po.cls = BaseClass::aff();
    auto report = parse_qdimacs_report(read_input(file), po);
    print_warnings(report.warnings, err);
    const auto& f = report.formula;

    std::vector<AffineEquation> eqs;
    for (const auto& atom : f.matrix.tractable) eqs.push_back(std::get<AffineEquation>(atom));
    const AffSystem phi1(std::move(eqs), f.prefix);

    QbfFormula reduced;
    reduced.base_class = BaseClass::aff();
    std::ostringstream text;
    if (!eval_qaff(phi1)) {
        reduced.matrix.tractable.emplace_back(AffineEquation({}, true));
        text << "c affine part is false\n";
    } else {
        const auto X = f.matrix.backdoor_vars();
        const auto kernel = kernelize(f.prefix, phi1, X);
        reduced.prefix = kernel.reduced_prefix;
        for (const auto& e : kernel.reduced_system.equations()) reduced.matrix.tractable.emplace_back(e);
        reduced.matrix.backdoor = f.matrix.backdoor;
        text << "c kernel k=" << X.size() << " equations=" << kernel.reduced_system.size()
             << " variables=" << kernel.reduced_prefix.size() << '\n';
        for (const auto& fv : kernel.forced) text << "c forced x" << fv.var.id << '\n';
    }
    text << write_qdimacs(reduced);
    write_output(path, text.str(), out);
    return 0;
}

// ---- classify

int do_classify(const std::string& file, std::optional<int> max_d, std::ostream& out) {
    const auto rf = parse_relations(read_input(file));
    const auto& gamma = rf.entries;
    int d = 3;
    for (const auto& r : gamma) d = std::max(d, static_cast<int>(r.arity));
    const auto verdict = classify(gamma, max_d.value_or(d));
    out << to_string(verdict) << '\n';
    for (const auto& fact : verdict.witness) {
        out << "c " << fact.function.name;
        if (fact.preserves) {
            out << " preserves every relation\n";
            continue;
        }
        const auto& r = gamma[fact.relation];
        out << " fails on " << r.name << ": rows";
        for (auto row : fact.rows) out << ' ' << Relation::tuple_to_bits(row, r.arity);
        out << " -> " << Relation::tuple_to_bits(fact.image, r.arity) << '\n';
    }
    return 0;
}

// ---- bench

struct SuiteSpec {
    std::string text;
    BaseClass cls;
    std::size_t count = 0;
    RandomParams params;
    std::uint64_t seed = 1;
};

SuiteSpec parse_suite(const std::string& text) {
    SuiteSpec s;
    s.text = text;
    std::vector<std::string> fields;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) fields.push_back(part);
    if (fields.size() < 2) throw ParamError("suite must look like <class>:<count>[:n=..][:k=..][:seed=..]");
    s.cls = parse_base_class(fields[0]);
    s.count = std::stoul(fields[1]);
    s.params.cls = s.cls;
    s.params.n = 10;
    s.params.k = 4;
    for (std::size_t i = 2; i < fields.size(); ++i) {
        const auto eq = fields[i].find('=');
        if (eq == std::string::npos) throw ParamError("suite field '" + fields[i] + "' is not key=value");
        const std::string key = fields[i].substr(0, eq);
        const std::string val = fields[i].substr(eq + 1);
        if (key == "n") {
            s.params.n = std::stoul(val);
        } else if (key == "k") {
            s.params.k = std::stoul(val);
        } else if (key == "seed") {
            s.seed = std::stoull(val);
        } else if (key == "density") {
            s.params.density = std::stod(val);
        } else if (key == "forall") {
            s.params.forall_prob = std::stod(val);
        } else {
            throw ParamError("unknown suite field '" + key + "'");
        }
    }
    return s;
}

std::vector<Algorithm> algorithms_for(BaseClass cls) {
    switch (cls.kind) {
        case BaseClass::Kind::TwoCnf: return {Algorithm::TwoCnf, Algorithm::Brute};
        case BaseClass::Kind::Aff: return {Algorithm::Aff, Algorithm::Brute};
        case BaseClass::Kind::PosAndNegUnits: return {Algorithm::PosNeg, Algorithm::Brute};
        case BaseClass::Kind::NegAndPosUnits: return {Algorithm::DualPosNeg, Algorithm::Brute};
        default: return {Algorithm::Auto, Algorithm::Brute};
    }
}

int do_bench(const std::vector<std::string>& suites, const std::string& path, std::optional<std::size_t> threads_flag,
             std::optional<std::size_t> cap_flag, std::ostream& out) {
    struct Job {
        const SuiteSpec* suite;
        std::size_t index;
    };
    std::vector<SuiteSpec> specs;
    for (const auto& s : suites) specs.push_back(parse_suite(s));
    std::vector<Job> jobs;
    for (const auto& s : specs) {
        for (std::size_t i = 0; i < s.count; ++i) jobs.push_back({&s, i});
    }

    std::ofstream file(path, std::ios::app);
    if (!file) throw IOError("cannot open '" + path + "' for appending");
    const std::size_t cap = setting(cap_flag, "QBD_BRUTE_CAP", kDefaultBruteCap);
    std::size_t threads = setting(threads_flag, "QBD_THREADS", std::max(1u, std::thread::hardware_concurrency()));
    threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, jobs.size()));

    std::mutex sink;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> records{0};
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
            const auto& job = jobs[j];
            const std::uint64_t seed = job.suite->seed + job.index;
            try {
                const auto f = gen_random(job.suite->params, seed);
                std::vector<json> lines;
                for (Algorithm alg : algorithms_for(job.suite->cls)) {
                    DispatchOptions opts;
                    opts.algorithm = alg;
                    opts.brute_cap = cap;
                    const auto start = std::chrono::steady_clock::now();
                    const auto v = dispatch(f, opts);
                    lines.push_back({{"suite", job.suite->text},
                                     {"instance", job.suite->text + "#" + std::to_string(seed)},
                                     {"seed", seed},
                                     {"algorithm", to_string(v.algorithm)},
                                     {"value", v.value},
                                     {"k", v.algorithm == AlgorithmTag::BruteForce ? f.backdoor_size() : v.stats.initial_k},
                                     {"n", f.prefix.size()},
                                     {"branch_nodes", v.stats.branch_nodes},
                                     {"leaves", v.stats.leaves},
                                     {"wall_ms", elapsed_ms(start)}});
                }
                std::lock_guard lock(sink);
                for (const auto& l : lines) file << l.dump() << '\n';
                records += lines.size();
            } catch (...) {
                std::lock_guard lock(sink);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    out << "wrote " << records.load() << " records for " << jobs.size() << " instances to " << path << '\n';
    return 0;
}

int do_bench_verify(const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open '" + path + "'");
    struct Instance {
        std::set<bool> values;
        std::size_t records = 0;
    };
    std::map<std::string, Instance> instances;
    std::size_t records = 0;
    std::size_t budget_violations = 0;
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json r;
        try {
            r = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(line_no, 0, std::string("bad JSON record: ") + e.what());
        }
        try {
            auto& inst = instances[r.at("instance").get<std::string>()];
            inst.values.insert(r.at("value").get<bool>());
            ++inst.records;
            if (r.at("algorithm").get<std::string>() != "BruteForce") {
                const auto k = r.at("k").get<std::size_t>();
                const auto leaves = r.at("leaves").get<std::size_t>();
                if (k < 63 && leaves > (std::size_t{1} << k)) ++budget_violations;
            }
        } catch (const json::exception& e) {
            throw ParseError(line_no, 0, std::string("incomplete record: ") + e.what());
        }
        ++records;
    }
    std::size_t disagreements = 0;
    for (const auto& [id, inst] : instances) {
        if (inst.values.size() > 1) {
            ++disagreements;
            out << "disagreement: " << id << '\n';
        }
    }
    out << "instances  " << instances.size() << '\n'
        << "records    " << records << '\n'
        << "agree      " << instances.size() - disagreements << '/' << instances.size() << '\n'
        << "over budget " << budget_violations << '\n';
    return disagreements == 0 && budget_violations == 0 ? 0 : kExitError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solver toolkit for QBF with clause-covering backdoors", "ccqbf"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Decide a QDIMACS formula (exit 10 TRUE, 20 FALSE)");
    solve->add_option("--algorithm", solve_args.algorithm, "auto|2cnf|aff|posneg|dual-posneg|brute")
        ->check(CLI::IsMember({"auto", "2cnf", "aff", "posneg", "dual-posneg", "brute"}));
    solve->add_option("--class", solve_args.cls, "Partition atoms for this base class");
    solve->add_option("--emit-strategy", solve_args.strategy, "Write a winning strategy tree to this path");
    solve->add_option("--brute-cap", solve_args.brute_cap, "Brute-force variable cap (env QBD_BRUTE_CAP, default 24)");
    solve->add_option("file", solve_args.file, "QDIMACS file, - for stdin")->required();

    std::string detect_file;
    std::string detect_class;
    auto* detect = app.add_subcommand("detect", "Report the clause-covering backdoor into a class");
    detect->add_option("--class", detect_class, "Base class tag")->required();
    detect->add_option("file", detect_file)->required();

    std::string kernel_file;
    std::string kernel_out;
    auto* kern = app.add_subcommand("kernelize", "Reduce the affine part to the backdoor kernel");
    kern->add_option("--out", kernel_out, "Output path (default stdout)");
    kern->add_option("file", kernel_file)->required();

    std::string rel_file;
    std::optional<int> max_d;
    auto* cls = app.add_subcommand("classify", "Classify a constraint language by its polymorphisms");
    cls->add_option("--max-d", max_d, "Largest d tried for threshold polymorphisms");
    cls->add_option("file", rel_file)->required();

    auto* gen = app.add_subcommand("generate", "Write generated instances");
    gen->require_subcommand(1);
    std::string gen_out;
    gen->add_option("--out", gen_out, "Output path (default stdout)");
    std::string graph_file;
    auto* gen_mis_horn = gen->add_subcommand("mis-horn", "Horn formula from a partitioned graph");
    gen_mis_horn->add_option("graph", graph_file)->required();
    auto* gen_mis_ihsb = gen->add_subcommand("mis-ihsb", "IHSB- formula from a partitioned graph");
    gen_mis_ihsb->add_option("graph", graph_file)->required();
    RandomParams rp;
    std::string rp_class = "2cnf";
    std::uint64_t seed = 1;
    auto* gen_random_cmd = gen->add_subcommand("random", "Random formula with a planted backdoor");
    gen_random_cmd->add_option("--n", rp.n, "Variables")->capture_default_str();
    gen_random_cmd->add_option("--k", rp.k, "Backdoor variables")->capture_default_str();
    gen_random_cmd->add_option("--class", rp_class, "Base class of the tractable part")->capture_default_str();
    gen_random_cmd->add_option("--density", rp.density, "Tractable atoms per variable")->capture_default_str();
    gen_random_cmd->add_option("--forall", rp.forall_prob, "Probability of a universal variable")->capture_default_str();
    gen_random_cmd->add_option("--seed", seed)->capture_default_str();
    std::size_t g_vertices = 6;
    std::size_t g_parts = 2;
    double g_edge = 0.3;
    auto* gen_graph_cmd = gen->add_subcommand("graph", "Random partitioned graph");
    gen_graph_cmd->add_option("--vertices", g_vertices)->capture_default_str();
    gen_graph_cmd->add_option("--k", g_parts, "Parts")->capture_default_str();
    gen_graph_cmd->add_option("--edge-prob", g_edge)->capture_default_str();
    gen_graph_cmd->add_option("--seed", seed)->capture_default_str();

    bool to_3horn = false;
    bool to_dual = false;
    std::string transform_file;
    std::string transform_out;
    auto* transform = app.add_subcommand("transform", "Rewrite a formula");
    auto* t3 = transform->add_flag("--to-3horn", to_3horn, "Split Horn clauses to at most three literals");
    auto* td = transform->add_flag("--dualize", to_dual, "Flip every literal");
    t3->excludes(td);
    transform->add_option("--out", transform_out, "Output path (default stdout)");
    transform->add_option("file", transform_file)->required();

    std::vector<std::string> suites;
    std::string bench_out;
    std::optional<std::size_t> threads;
    std::optional<std::size_t> bench_cap;
    auto* bench = app.add_subcommand("bench", "Cross-check solvers on generated suites, appending JSONL records");
    bench->add_option("--suite", suites, "<class>:<count>[:n=N][:k=K][:seed=S]")->required();
    bench->add_option("--out", bench_out, "JSONL file to append to")->required();
    bench->add_option("--threads", threads, "Workers (env QBD_THREADS)");
    bench->add_option("--brute-cap", bench_cap, "Brute-force variable cap (env QBD_BRUTE_CAP)");

    std::string verify_file;
    auto* verify = app.add_subcommand("bench-verify", "Check agreement and leaf budgets in a JSONL file");
    verify->add_option("file", verify_file)->required();

    std::vector<std::string> argv_store{"ccqbf"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*solve) return do_solve(solve_args, out, err);
        if (*detect) return do_detect(detect_file, detect_class, out, err);
        if (*kern) return do_kernelize(kernel_file, kernel_out, out, err);
        if (*cls) return do_classify(rel_file, max_d, out);
        if (*gen) {
            std::string text;
            if (*gen_mis_horn || *gen_mis_ihsb) {
                const auto g = parse_graph(read_input(graph_file));
                text = write_qdimacs(*gen_mis_horn ? mis_to_horn(g) : mis_to_ihsb_minus(g));
            } else if (*gen_random_cmd) {
                rp.cls = parse_base_class(rp_class);
                text = write_qdimacs(gen_random(rp, seed));
            } else {
                text = write_graph(gen_graph(g_vertices, g_parts, g_edge, seed));
            }
            write_output(gen_out, text, out);
            return 0;
        }
        if (*transform) {
            if (!to_3horn && !to_dual) throw ParamError("transform needs --to-3horn or --dualize");
            const auto f = parse_qdimacs(read_input(transform_file));
            write_output(transform_out, write_qdimacs(to_3horn ? horn_to_3horn(f) : dualize(f)), out);
            return 0;
        }
        if (*bench) return do_bench(suites, bench_out, threads, bench_cap, out);
        if (*verify) return do_bench_verify(verify_file, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace ccqbf::cli
