#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <ordermap/io.hpp>
#include <ordermap/simulate.hpp>

#include "fixtures.hpp"
#include "reference.hpp"

using namespace ordermap;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = ORDERMAP_DATA_DIR;

/// Scratch directory removed on destruction.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ordermap-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return path / name;
    }
};

void expect_probs_near(const std::vector<double>& got, const std::vector<double>& want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], tol) << "entry " << k;
}

} // namespace

TEST(DataFiles, MatchCodeFixtures) {
    const ModelFile soccer = load_model(data_dir / "soccer.json");
    EXPECT_EQ(soccer.kind, SourceKind::table);
    EXPECT_EQ(soccer.variables.names(), (std::vector<std::string>{"a", "b", "c"}));
    expect_probs_near(soccer.probs, soccer_net().joint(), 1e-12);

    const ModelFile four = load_model(data_dir / "four.json");
    EXPECT_EQ(four.kind, SourceKind::table);
    expect_probs_near(four.probs, four_net().joint(), 1e-11);
    EXPECT_EQ(oracle_model(*make_oracle(four)), oracle_model(four_oracle()));

    const ModelFile dia = load_model(data_dir / "diamond.json");
    EXPECT_EQ(dia.kind, SourceKind::dag);
    EXPECT_EQ(dia.dag.arcs(), diamond().arcs());
    EXPECT_EQ(dia.arity(), (std::vector<int>{2, 2, 2, 2}));
}

TEST(ModelJson, RoundTrip) {
    for (const char* name : {"soccer.json", "four.json", "diamond.json"}) {
        const ModelFile m = load_model(data_dir / name);
        const std::string text = format_json(model_to_json(m));
        const ModelFile back = parse_model(Json::parse(text));
        EXPECT_EQ(back.kind, m.kind) << name;
        EXPECT_EQ(back.variables.names(), m.variables.names()) << name;
        EXPECT_EQ(back.arity(), m.arity()) << name;
        EXPECT_EQ(back.dag.arcs(), m.dag.arcs()) << name;
        EXPECT_EQ(back.probs, m.probs) << name;
        EXPECT_EQ(format_json(model_to_json(back)), text) << name;
    }
}

TEST(ModelJson, Errors) {
    auto bad = [](const char* text) { return parse_model(Json::parse(text)); };
    EXPECT_THROW(bad(R"([1, 2])"), InvalidArgument);
    EXPECT_THROW(bad(R"({"dag": {"arcs": []}})"), InvalidArgument);
    EXPECT_THROW(bad(R"({"variables": ["a"]})"), InvalidArgument);
    EXPECT_THROW(bad(R"({"variables": ["a", "b"], "dag": {"arcs": []}, "table": {"probs": [1]}})"), InvalidArgument);
    EXPECT_THROW(bad(R"({"variables": ["a", "b"], "dag": {"arcs": [["a", "z"]]}})"), InvalidArgument);
    EXPECT_THROW(bad(R"({"variables": ["a", "b"], "dag": {"arcs": [["a", "b"], ["b", "a"]]}})"), InvalidArgument);
    EXPECT_THROW(bad(R"({"variables": ["a", "b"], "dag": {"arcs": [["a"]]}})"), InvalidArgument);
    EXPECT_THROW(bad(R"({"variables": ["a", "b"], "table": {"probs": [0.5, 0.5]}})"), InvalidArgument);
    EXPECT_THROW(bad(R"({"variables": ["a", "b"], "dag": {"arcs": 3}})"), InvalidArgument);
    EXPECT_THROW(bad(R"({"variables": ["a", "a"], "dag": {"arcs": []}})"), InvalidArgument);
    EXPECT_THROW(load_model(data_dir / "missing.json"), InvalidArgument);
}

TEST(Csv, ParsesColumnsInAnyOrder) {
    std::istringstream in("b,a\n1,0\n\n0,1\n");
    const auto rows = parse_csv(in, VariableTable({"a", "b"}, {2, 2}));
    EXPECT_EQ(rows, (std::vector<std::vector<int>>{{0, 1}, {1, 0}}));

    std::ostringstream out;
    write_csv(out, VariableTable({"a", "b"}), rows);
    EXPECT_EQ(out.str(), "a,b\n0,1\n1,0\n");
}

TEST(Csv, ErrorsNameTheLine) {
    const VariableTable vars({"a", "b"}, {2, 2});
    auto message = [&](const std::string& text) {
        std::istringstream in(text);
        try {
            parse_csv(in, vars);
        } catch (const InvalidArgument& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("a,b\n0,1\n0,2\n").find("line 3"), std::string::npos);
    EXPECT_NE(message("a,b\n0,1\n1\n").find("line 3"), std::string::npos);
    EXPECT_NE(message("a,b\nx,1\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("a,b\n0,-1\n").find("line 2"), std::string::npos);
    EXPECT_NE(message("a,c\n0,1\n").find("line 1"), std::string::npos);
    EXPECT_NE(message("a,a\n0,1\n").find("line 1"), std::string::npos);
    EXPECT_NE(message("a\n0\n").find("line 1"), std::string::npos);
    EXPECT_EQ(message(""), "CSV has no header row");
}

TEST(ModelJson, DataSourceWithRelativeCsvPath) {
    const TempDir tmp;
    tmp.write("rows.csv", "a,b\n0,0\n1,1\n2,0\n");
    const fs::path model = tmp.write("m.json", R"({"variables": ["a", "b"], "data": {"csv_path": "rows.csv"}})");
    const ModelFile m = load_model(model);
    EXPECT_EQ(m.kind, SourceKind::data);
    EXPECT_EQ(m.csv_path, tmp.path / "rows.csv");
    EXPECT_EQ(m.rows.size(), 3u);
    EXPECT_EQ(m.arity(), (std::vector<int>{3, 2}));
    EXPECT_EQ(make_oracle(m)->size(), 2);

    const fs::path capped = tmp.write("c.json", R"({"variables": ["a", "b"], "arity": [2, 2], "data": {"csv_path": "rows.csv"}})");
    try {
        load_model(capped);
        ADD_FAILURE() << "value above arity accepted";
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
    }
    tmp.write("empty.csv", "a,b\n");
    EXPECT_THROW(load_model(tmp.write("e.json", R"({"variables": ["a", "b"], "data": {"csv_path": "empty.csv"}})")),
                 InvalidArgument);
}

TEST(Dot, EmitExamples) {
    const std::vector<std::string> names{"a", "b", "c"};
    EXPECT_EQ(emit_dot(Dag::from_arcs(3, {{b, c}, {a, c}}), names),
              "digraph ordermap {\n  a;\n  b;\n  c;\n  a -> c;\n  b -> c;\n}\n");
    EXPECT_EQ(emit_dot(Dag(3), names), "digraph ordermap {\n  a;\n  b;\n  c;\n}\n");
    EXPECT_EQ(emit_dot(Dag::from_arcs(2, {{0, 1}}), {"x y", "2"}), "digraph ordermap {\n  \"x y\";\n  \"2\";\n  \"x y\" -> \"2\";\n}\n");
    EXPECT_THROW(emit_dot(Dag(2), names), InvalidArgument);
}

TEST(Dot, ParseRoundTripAndForms) {
    const std::vector<std::string> names{"a", "b", "c", "d"};
    const DotGraph g = parse_dot(emit_dot(diamond(), names));
    EXPECT_EQ(g.variables.names(), names);
    EXPECT_EQ(g.dag.arcs(), diamond().arcs());

    const DotGraph h = parse_dot(R"(strict digraph "G" {
        // comment
        rankdir = LR; node [shape=box];
        x -> y -> "z w" [color=red];  /* chain */
        # another comment
        v;
    })");
    EXPECT_EQ(h.variables.names(), (std::vector<std::string>{"x", "y", "z w", "v"}));
    EXPECT_EQ(h.dag.arcs(), (std::vector<Arc>{{0, 1}, {1, 2}}));
}

TEST(Dot, ParseErrors) {
    EXPECT_THROW(parse_dot("graph { a -- b }"), InvalidArgument);
    EXPECT_THROW(parse_dot("digraph { a -- b }"), InvalidArgument);
    EXPECT_THROW(parse_dot("digraph { subgraph s { a } }"), InvalidArgument);
    EXPECT_THROW(parse_dot("digraph { a -> b; b -> a }"), InvalidArgument);
    EXPECT_THROW(parse_dot("digraph { a -> }"), InvalidArgument);
    EXPECT_THROW(parse_dot("digraph { a -> b"), InvalidArgument);
    EXPECT_THROW(parse_dot("digraph { }"), InvalidArgument);
    EXPECT_THROW(parse_dot("digraph { \"a }"), InvalidArgument);
    try {
        parse_dot("digraph {\n a -> b;\n c -- d;\n}");
        ADD_FAILURE();
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(Trace, JsonLines) {
    const TableOracle o = four_oracle();
    const LearnResult r = optimize_ordering(o, Ordering({b, a, d, c}));
    const VariableTable vars({"a", "b", "c", "d"});
    std::ostringstream out;
    write_trace_jsonl(out, r.trace, vars);
    std::istringstream in(out.str());
    std::string line;
    std::size_t k = 0;
    while (std::getline(in, line)) {
        const Json j = Json::parse(line);
        EXPECT_EQ(j.at("step"), k);
        EXPECT_EQ(j.at("op"), r.trace[k].op);
        EXPECT_EQ(j.at("arcs_before").get<int>() - j.at("arcs_after").get<int>(),
                  dag_of(r.trace[k].before).arc_count() - dag_of(r.trace[k].after).arc_count());
        ++k;
    }
    ASSERT_EQ(k, r.trace.size());
    const Json first = Json::parse(out.str().substr(0, out.str().find('\n')));
    EXPECT_EQ(first.at("op"), "unclique");
    EXPECT_EQ(first.at("clique"), Json::parse(R"(["a", "b", "c", "d"])"));
    EXPECT_EQ(first.at("order_before"), Json::parse(R"(["b", "a", "d", "c"])"));
    EXPECT_EQ(first.at("order_after"), Json::parse(R"(["b", "a", "c", "d"])"));
    EXPECT_EQ(first.at("arcs_removed"), Json::parse(R"([["b", "c"]])"));
}

TEST(FormatJson, Layout) {
    const Json j = Json::parse(R"({"variables": ["a", "b"], "dag": {"arcs": [["a", "b"]]}})");
    EXPECT_EQ(format_json(j), "{\n  \"variables\": [\"a\", \"b\"],\n  \"dag\": {\n    \"arcs\": [[\"a\", \"b\"]]\n  }\n}\n");
}

TEST(Simulate, DeterministicForASeed) {
    SimulationSpec spec;
    spec.n = 5;
    spec.rows = 3000;
    spec.restarts = 3;
    spec.seed = 99;
    const SimulationReport x = simulate(spec);
    const SimulationReport y = simulate(spec);
    EXPECT_EQ(x.truth.arcs(), y.truth.arcs());
    EXPECT_EQ(x.best.dag.arcs(), y.best.dag.arcs());
    EXPECT_EQ(x.best.state, y.best.state);
    EXPECT_EQ(x.oracle_queries, y.oracle_queries);
    EXPECT_EQ(x.metrics.directed_shd, y.metrics.directed_shd);
    spec.seed = 100;
    EXPECT_NE(simulate(spec).truth.arcs(), x.truth.arcs());
}

TEST(Simulate, ExactOracleRecoversDiamond) {
    SimulationSpec spec;
    spec.truth = diamond();
    spec.exact = true;
    spec.restarts = 2;
    const SimulationReport r = simulate(spec);
    EXPECT_EQ(r.metrics.skeleton_shd, 0);
    EXPECT_EQ(ref::dag_statements(r.best.dag), ref::dag_statements(diamond()));
}

TEST(Simulate, RejectsBadSpecs) {
    SimulationSpec spec;
    spec.rows = 0;
    EXPECT_THROW(simulate(spec), InvalidArgument);
    spec = {};
    spec.alpha = 1.5;
    EXPECT_THROW(simulate(spec), InvalidArgument);
    spec = {};
    spec.n = simulate_max_nodes + 1;
    EXPECT_THROW(simulate(spec), InvalidArgument);
    spec = {};
    spec.arity = {2, 2};
    EXPECT_THROW(simulate(spec), InvalidArgument);
    spec = {};
    spec.restarts = 0;
    EXPECT_THROW(simulate(spec), InvalidArgument);
}
