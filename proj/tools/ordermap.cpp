#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <ordermap/algorithm.hpp>
#include <ordermap/bruteforce.hpp>
#include <ordermap/io.hpp>
#include <ordermap/metrics.hpp>
#include <ordermap/sampling.hpp>
#include <ordermap/simulate.hpp>

using namespace ordermap;

namespace {

enum Exit { ok = 0, input_error = 2, verification_failed = 3, incomplete = 4, size_cap = 5 };

/// A failure that maps to a specific exit code.
struct ExitError : std::runtime_error {
    ExitError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

std::vector<std::string> split_names(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::uint64_t effective_seed(std::uint64_t seed) {
    const char* env = std::getenv("ORDERMAP_SEED");
    if (env == nullptr || *env == '\0') return seed;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument(std::string("ORDERMAP_SEED is not an unsigned integer: ") + env);
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

std::string to_json_text(const Json& j) { return format_json(j); }

// ---------------------------------------------------------------- learn

struct LearnOptions {
    std::string model;
    std::string order;
    std::string trace;
    std::string emit = "json";
    std::string out;
    bool verify = false;
    bool no_swap_search = false;
    double alpha = 0.05;
    double epsilon = 1e-9;
    std::uint64_t max_perms = default_max_perms;
    int verify_limit = 6;
    std::uint64_t seed = 0;
};

Ordering initial_ordering(const std::string& spec, const VariableTable& vars, std::uint64_t seed) {
    if (spec.empty()) return Ordering::identity(vars.size());
    if (spec == "random") {
        Rng rng(seed);
        return random_ordering(vars.size(), rng);
    }
    std::vector<Var> seq;
    for (const auto& name : split_names(spec)) seq.push_back(vars.index(name));
    if (static_cast<int>(seq.size()) != vars.size())
        throw InvalidArgument("--order must list every variable exactly once");
    return Ordering(std::move(seq));
}

int cmd_learn(const LearnOptions& o) {
    const ModelFile model = load_model(o.model);
    if (!(o.alpha > 0 && o.alpha < 1)) throw InvalidArgument("--alpha must lie in (0, 1)");
    const auto base = make_oracle(model, o.alpha, o.epsilon);
    if (const auto* table = dynamic_cast<const TableOracle*>(base.get()); table && table->positivity_warning())
        std::cerr << "warning: the table has zero cells; boundaries may depend on the ordering of tests\n";
    CachedOracle oracle(*base);
    const Ordering init = initial_ordering(o.order, model.variables, effective_seed(o.seed));

    LearnConfig config;
    config.max_perms = o.max_perms;
    config.swap_search = !o.no_swap_search;
    const LearnResult res = optimize_ordering(oracle, init, config);
    const VariableTable& vars = model.variables;

    if (!o.trace.empty()) {
        std::ofstream tr(o.trace, std::ios::binary);
        if (!tr) throw InvalidArgument("cannot write " + o.trace);
        write_trace_jsonl(tr, res.trace, vars);
    }
    const std::string json_text = to_json_text(dag_to_json(res.dag, vars));
    if (!o.out.empty()) write_file(o.out, json_text);
    std::cout << (o.emit == "dot" ? emit_dot(res.dag, vars.names()) : json_text);

    std::cerr << "ordering:";
    for (Var v : res.state.order.sequence()) std::cerr << ' ' << vars.name(v);
    std::cerr << "\narcs: " << res.dag.arc_count() << "\noracle queries: " << res.stats.oracle_queries
              << "\nsplits: " << res.stats.splits << "\niterations: " << res.stats.iterations
              << "\npermutations: " << res.stats.permutations << '\n';

    if (o.verify) {
        if (vars.size() > o.verify_limit)
            throw ExitError(size_cap, "verification over " + std::to_string(vars.size()) + " variables exceeds --verify-limit " +
                                          std::to_string(o.verify_limit));
        const TraceReport report = verify_trace(res.trace, oracle, o.verify_limit);
        for (const auto& v : report.violations) std::cerr << "violation: " << v << '\n';
        const bool minimal = is_minimal_imap(res.dag, oracle, o.verify_limit);
        if (!minimal) std::cerr << "violation: result is not a minimal I-map\n";
        std::cerr << "verify: " << (report.ok && minimal ? "ok" : "FAILED") << '\n';
        if (!report.ok || !minimal) return verification_failed;
    }
    if (res.stats.incomplete) {
        std::cerr << "incomplete optimization: " << res.stats.budget_failures << " clique(s) over budget"
                  << (res.stats.iteration_ceiling ? ", iteration ceiling reached" : "") << '\n';
        return incomplete;
    }
    return ok;
}

// ---------------------------------------------------------------- dsep

int cmd_dsep(const std::string& path, const std::string& x, const std::string& z, const std::string& y) {
    const ModelFile model = load_model(path);
    if (model.kind != SourceKind::dag) throw InvalidArgument("dsep needs a model with a \"dag\" source");
    const auto& vars = model.variables;
    const VarSet xs = vars.set_of(split_names(x));
    const VarSet ys = vars.set_of(split_names(y));
    const VarSet zs = vars.set_of(split_names(z));
    std::cout << (d_separated(model.dag, xs, zs, ys) ? "true" : "false") << '\n';
    return ok;
}

// ---------------------------------------------------------------- brute

int cmd_brute(const std::string& path, double alpha, double epsilon) {
    const ModelFile model = load_model(path);
    const auto base = make_oracle(model, alpha, epsilon);
    CachedOracle oracle(*base);
    const auto& vars = model.variables;
    const OrderingSweep sw = sweep(oracle);
    std::cout << "min arcs: " << sw.min_arcs << '\n';
    std::cout << "optimal orderings: " << sw.argmin.size() << " of " << sw.entries.size() << '\n';
    std::cout << "best ordering:";
    for (Var v : sw.best().order.sequence()) std::cout << ' ' << vars.name(v);
    std::cout << '\n';
    if (vars.size() <= perfect_map_limit) {
        std::cout << "perfect map: " << (perfect_map_exists(oracle, sw) ? "yes" : "no") << '\n';
    } else {
        std::cout << "perfect map: not checked (more than " << perfect_map_limit << " variables)\n";
    }
    return ok;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
    int n = 5;
    int max_parents = 3;
    double edge_prob = 0.5;
    long long rows = 10000;
    int restarts = 1;
    std::uint64_t seed = 1;
    double alpha = 0.05;
    std::string oracle = "data";
    std::string truth;
    int arity = 2;
};

int cmd_simulate(const SimulateOptions& o) {
    if (o.rows < 1) throw InvalidArgument("--rows must be positive");
    if (o.arity < 2) throw InvalidArgument("--arity must be at least 2");

    SimulationSpec spec;
    VariableTable vars;
    if (!o.truth.empty()) {
        const ModelFile m = load_model(o.truth);
        if (m.kind != SourceKind::dag) throw InvalidArgument("--truth needs a model with a \"dag\" source");
        vars = m.variables;
        spec.truth = m.dag;
        spec.arity = m.variables.has_arity() ? m.variables.arity()
                                             : std::vector<int>(static_cast<std::size_t>(vars.size()), o.arity);
    } else {
        if (o.n < 1 || o.n > simulate_max_nodes) throw InvalidArgument("--n must lie in [1, 10]");
        vars = VariableTable::letters(o.n);
        spec.arity.assign(static_cast<std::size_t>(o.n), o.arity);
    }
    spec.n = o.n;
    spec.max_parents = o.max_parents;
    spec.edge_prob = o.edge_prob;
    spec.rows = static_cast<std::size_t>(o.rows);
    spec.restarts = o.restarts;
    spec.seed = effective_seed(o.seed);
    spec.alpha = o.alpha;
    spec.exact = o.oracle == "exact";

    const SimulationReport r = simulate(spec);
    const StructureMetrics& m = r.metrics;
    auto row = [](const std::string& label, const auto& value) {
        std::cout << std::left << std::setw(20) << label << value << '\n';
    };
    std::cout << std::fixed << std::setprecision(3);
    row("variables", vars.size());
    row("rows", spec.exact ? std::string("-") : std::to_string(o.rows));
    row("oracle", o.oracle);
    row("seed", spec.seed);
    row("restarts", o.restarts);
    row("true edges", m.true_edges);
    row("learned edges", m.learned_edges);
    row("matched edges", m.matched_edges);
    row("skeleton SHD", m.skeleton_shd);
    row("directed SHD", m.directed_shd);
    row("precision", m.precision);
    row("recall", m.recall);
    row("oracle queries", r.oracle_queries);
    row("distinct tests", r.distinct_tests);
    row("incomplete runs", r.incomplete_runs);
    std::cout << "truth:\n" << emit_dot(r.truth, vars.names()) << "learned:\n" << emit_dot(r.best.dag, vars.names());
    return ok;
}

// ---------------------------------------------------------------- convert

int cmd_convert(const std::string& input, std::string to, const std::string& out) {
    const std::string text = read_text(input);
    const auto first = text.find_first_not_of(" \t\r\n");
    const bool is_json = first != std::string::npos && text[first] == '{';
    if (to.empty()) to = is_json ? "dot" : "json";

    VariableTable vars;
    Dag dag;
    if (is_json) {
        Json doc;
        try {
            doc = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw InvalidArgument(input + ": " + e.what());
        }
        const ModelFile m = parse_model(doc, std::filesystem::path(input).parent_path());
        if (m.kind != SourceKind::dag) throw InvalidArgument("convert needs a model with a \"dag\" source");
        vars = m.variables;
        dag = m.dag;
    } else {
        DotGraph g = parse_dot(text);
        vars = std::move(g.variables);
        dag = std::move(g.dag);
    }
    const std::string result = to == "dot" ? emit_dot(dag, vars.names()) : to_json_text(dag_to_json(dag, vars));
    if (out.empty()) {
        std::cout << result;
    } else {
        write_file(out, result);
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal I-map learning by variable-ordering optimization"};
    app.require_subcommand(1);

    LearnOptions lo;
    auto* learn = app.add_subcommand("learn", "learn a DAG from a model file");
    learn->add_option("model", lo.model, "model JSON")->required();
    learn->add_option("--order", lo.order, "initial ordering: comma-separated names, or 'random'");
    learn->add_option("--trace", lo.trace, "write the step log as JSON lines");
    learn->add_option("--emit", lo.emit, "stdout format")->check(CLI::IsMember({"json", "dot"}));
    learn->add_option("--out", lo.out, "also write the DAG as JSON to this file");
    learn->add_flag("--verify", lo.verify, "check the trace and minimality");
    learn->add_flag("--no-swap-search", lo.no_swap_search, "unclique tries free-set arrangements only");
    learn->add_option("--alpha", lo.alpha, "significance level for data models");
    learn->add_option("--epsilon", lo.epsilon, "tolerance for table models");
    learn->add_option("--max-perms", lo.max_perms, "unclique arrangement budget");
    learn->add_option("--verify-limit", lo.verify_limit, "node cap for --verify");
    learn->add_option("--seed", lo.seed, "seed for --order random");

    std::string dsep_model, dx, dz, dy;
    auto* dsep = app.add_subcommand("dsep", "d-separation query on a DAG model");
    dsep->add_option("model", dsep_model, "model JSON with a dag source")->required();
    dsep->add_option("-x", dx, "comma-separated names")->required();
    dsep->add_option("-z", dz, "comma-separated names");
    dsep->add_option("-y", dy, "comma-separated names")->required();

    std::string brute_model;
    double brute_alpha = 0.05, brute_eps = 1e-9;
    auto* brute = app.add_subcommand("brute", "minimum arc count over all orderings");
    brute->add_option("model", brute_model, "model JSON")->required();
    brute->add_option("--alpha", brute_alpha, "significance level for data models");
    brute->add_option("--epsilon", brute_eps, "tolerance for table models");

    SimulateOptions so;
    auto* simulate = app.add_subcommand("simulate", "learn from data sampled out of a random network");
    simulate->add_option("--n", so.n, "number of variables");
    simulate->add_option("--max-parents", so.max_parents, "parent cap of the random DAG");
    simulate->add_option("--edge-prob", so.edge_prob, "arc probability of the random DAG");
    simulate->add_option("--rows", so.rows, "sample size");
    simulate->add_option("--restarts", so.restarts, "random initial orderings; the sparsest result is kept");
    simulate->add_option("--seed", so.seed, "seed for everything random");
    simulate->add_option("--alpha", so.alpha, "significance level");
    simulate->add_option("--oracle", so.oracle, "data or exact")->check(CLI::IsMember({"data", "exact"}));
    simulate->add_option("--truth", so.truth, "model JSON with the generating DAG");
    simulate->add_option("--arity", so.arity, "states per variable");

    std::string conv_in, conv_to, conv_out;
    auto* convert = app.add_subcommand("convert", "convert a DAG between JSON and DOT");
    convert->add_option("input", conv_in, "JSON or DOT file")->required();
    convert->add_option("--to", conv_to, "json or dot (default: the other format)")->check(CLI::IsMember({"json", "dot"}));
    convert->add_option("-o,--out", conv_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return input_error;
    }

    try {
        if (*learn) return cmd_learn(lo);
        if (*dsep) return cmd_dsep(dsep_model, dx, dz, dy);
        if (*brute) return cmd_brute(brute_model, brute_alpha, brute_eps);
        if (*simulate) return cmd_simulate(so);
        if (*convert) return cmd_convert(conv_in, conv_to, conv_out);
    } catch (const ExitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code;
    } catch (const SizeLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return size_cap;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    } catch (const InvalidState& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    }
    return ok;
}
