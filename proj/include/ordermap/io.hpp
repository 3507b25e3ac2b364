#pragma once

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "algorithm.hpp"
#include "data_oracle.hpp"
#include "oracle.hpp"
#include "table_oracle.hpp"

namespace ordermap {

using Json = nlohmann::ordered_json;

enum class SourceKind { dag, table, data };

inline const char* to_string(SourceKind k) {
    switch (k) {
    case SourceKind::dag: return "dag";
    case SourceKind::table: return "table";
    case SourceKind::data: return "data";
    }
    return "?";
}

/// A model description: named variables plus exactly one source of independence answers.
struct ModelFile {
    VariableTable variables;
    SourceKind kind = SourceKind::dag;
    Dag dag;                              // kind == dag
    std::vector<double> probs;            // kind == table, row-major, last variable fastest
    std::filesystem::path csv_path;       // kind == data, resolved against the JSON's directory
    std::vector<std::vector<int>> rows;   // kind == data, columns in variable order

    int size() const { return variables.size(); }

    /// Arity per variable: explicit, or binary by default.
    std::vector<int> arity() const {
        if (variables.has_arity()) return variables.arity();
        return std::vector<int>(static_cast<std::size_t>(size()), 2);
    }
};

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

inline bool is_plain_id(const std::string& s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

inline std::string dot_id(const std::string& s) {
    if (is_plain_id(s)) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

inline int parse_cell(const std::string& text, std::size_t line, const std::string& column) {
    int value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || value < 0)
        throw InvalidArgument("line " + std::to_string(line) + ": column " + column +
                              " is not a non-negative integer: '" + text + "'");
    return value;
}

inline std::vector<std::string> split_csv_line(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t");
        const auto e = cell.find_last_not_of(" \t");
        cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

} // namespace detail

/// Records with a header row of variable names. Columns may come in any order; they are
/// returned in variable order. Values must be non-negative integers below the arity when one
/// is given. Errors carry the 1-based line number.
inline std::vector<std::vector<int>> parse_csv(std::istream& in, const VariableTable& vars) {
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        header = detail::split_csv_line(line);
        if (!(header.size() == 1 && header.front().empty())) break;
        header.clear();
    }
    if (header.empty()) throw InvalidArgument("CSV has no header row");

    std::vector<Var> column_var;
    VarSet seen;
    for (const auto& name : header) {
        Var v = -1;
        try {
            v = vars.index(name);
        } catch (const InvalidArgument&) {
            throw InvalidArgument("line " + std::to_string(lineno) + ": unknown column '" + name + "'");
        }
        if (seen.contains(v)) throw InvalidArgument("line " + std::to_string(lineno) + ": duplicate column '" + name + "'");
        seen.insert(v);
        column_var.push_back(v);
    }
    if (seen != VarSet::full(vars.size()))
        throw InvalidArgument("line " + std::to_string(lineno) + ": header lacks " +
                              vars.format(VarSet::full(vars.size()) - seen));

    std::vector<std::vector<int>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cells = detail::split_csv_line(line);
        if (cells.empty() || (cells.size() == 1 && cells.front().empty())) continue;
        if (cells.size() != column_var.size())
            throw InvalidArgument("line " + std::to_string(lineno) + ": expected " + std::to_string(column_var.size()) +
                                  " values, found " + std::to_string(cells.size()));
        std::vector<int> row(column_var.size());
        for (std::size_t k = 0; k < cells.size(); ++k) {
            const Var v = column_var[k];
            const int value = detail::parse_cell(cells[k], lineno, vars.name(v));
            if (vars.has_arity() && value >= vars.arity()[static_cast<std::size_t>(v)])
                throw InvalidArgument("line " + std::to_string(lineno) + ": value " + std::to_string(value) +
                                      " of " + vars.name(v) + " is not below its arity " +
                                      std::to_string(vars.arity()[static_cast<std::size_t>(v)]));
            row[static_cast<std::size_t>(v)] = value;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<std::vector<int>> load_csv(const std::filesystem::path& path, const VariableTable& vars) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    try {
        return parse_csv(in, vars);
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
}

inline void write_csv(std::ostream& out, const VariableTable& vars, const std::vector<std::vector<int>>& rows) {
    for (Var v = 0; v < vars.size(); ++v) out << (v ? "," : "") << vars.name(v);
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << row[k];
        out << '\n';
    }
}

/// Build a model from a parsed JSON document; `base_dir` anchors a relative csv_path.
inline ModelFile parse_model(const Json& doc, const std::filesystem::path& base_dir = {}) {
    try {
        if (!doc.is_object()) throw InvalidArgument("model file must be a JSON object");
        if (!doc.contains("variables")) throw InvalidArgument("model file lacks \"variables\"");
        auto names = doc.at("variables").get<std::vector<std::string>>();
        std::vector<int> arity;
        if (doc.contains("arity")) arity = doc.at("arity").get<std::vector<int>>();

        ModelFile m;
        m.variables = VariableTable(std::move(names), std::move(arity));
        const int sources = static_cast<int>(doc.contains("dag")) + static_cast<int>(doc.contains("table")) +
                            static_cast<int>(doc.contains("data"));
        if (sources != 1) throw InvalidArgument("model file needs exactly one of \"dag\", \"table\", \"data\"");

        if (doc.contains("dag")) {
            m.kind = SourceKind::dag;
            std::vector<Arc> arcs;
            for (const auto& arc : doc.at("dag").at("arcs")) {
                const auto ends = arc.get<std::vector<std::string>>();
                if (ends.size() != 2) throw InvalidArgument("an arc is a [parent, child] pair");
                arcs.emplace_back(m.variables.index(ends[0]), m.variables.index(ends[1]));
            }
            m.dag = Dag::from_arcs(m.size(), arcs);
        } else if (doc.contains("table")) {
            m.kind = SourceKind::table;
            m.probs = doc.at("table").at("probs").get<std::vector<double>>();
            std::size_t states = 1;
            for (int a : m.arity()) states *= static_cast<std::size_t>(a);
            if (m.probs.size() != states)
                throw InvalidArgument("\"probs\" has " + std::to_string(m.probs.size()) + " entries, expected " +
                                      std::to_string(states));
        } else {
            m.kind = SourceKind::data;
            std::filesystem::path p = doc.at("data").at("csv_path").get<std::string>();
            m.csv_path = p.is_absolute() ? p : base_dir / p;
            m.rows = load_csv(m.csv_path, m.variables);
            if (m.rows.empty()) throw InvalidArgument(m.csv_path.string() + ": no data rows");
            if (!m.variables.has_arity()) {
                // Infer arities from the observed values.
                std::vector<int> inferred(static_cast<std::size_t>(m.size()), 1);
                for (const auto& row : m.rows)
                    for (std::size_t k = 0; k < row.size(); ++k) inferred[k] = std::max(inferred[k], row[k] + 1);
                m.variables = VariableTable(m.variables.names(), inferred);
            }
        }
        return m;
    } catch (const Json::exception& e) {
        throw InvalidArgument(std::string("malformed model file: ") + e.what());
    }
}

inline ModelFile load_model(const std::filesystem::path& path) {
    Json doc;
    try {
        doc = Json::parse(read_text(path));
    } catch (const Json::parse_error& e) {
        throw InvalidArgument(path.string() + ": " + e.what());
    }
    return parse_model(doc, path.parent_path());
}

/// JSON form of a graph: {"variables", "arity" (if known), "dag": {"arcs"}}.
inline Json dag_to_json(const Dag& dag, const VariableTable& vars) {
    if (dag.size() != vars.size()) throw InvalidArgument("graph and variable list differ in size");
    Json doc;
    doc["variables"] = vars.names();
    if (vars.has_arity()) doc["arity"] = vars.arity();
    Json arcs = Json::array();
    for (auto [p, c] : dag.arcs()) arcs.push_back({vars.name(p), vars.name(c)});
    doc["dag"] = {{"arcs", arcs}};
    return doc;
}

inline Json model_to_json(const ModelFile& m) {
    switch (m.kind) {
    case SourceKind::dag: return dag_to_json(m.dag, m.variables);
    case SourceKind::table: {
        Json doc;
        doc["variables"] = m.variables.names();
        doc["arity"] = m.arity();
        doc["table"] = {{"probs", m.probs}};
        return doc;
    }
    case SourceKind::data: {
        Json doc;
        doc["variables"] = m.variables.names();
        doc["arity"] = m.arity();
        doc["data"] = {{"csv_path", m.csv_path.string()}};
        return doc;
    }
    }
    return {};
}

namespace detail {

inline bool flat_json(const Json& j) {
    if (j.is_object()) return false;
    if (!j.is_array()) return true;
    for (const auto& e : j)
        if (!flat_json(e)) return false;
    return true;
}

inline void format_json(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    if (j.is_array() && flat_json(j)) {
        out += "[";
        bool first = true;
        for (const auto& e : j) {
            if (!first) out += ", ";
            format_json(e, out, indent);
            first = false;
        }
        out += "]";
    } else if (j.is_array()) {
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            out += pad;
            format_json(j[k], out, indent + 2);
            out += k + 1 < j.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
    } else if (j.is_object() && !j.empty()) {
        out += "{\n";
        std::size_t k = 0;
        for (const auto& [key, value] : j.items()) {
            out += pad + Json(key).dump() + ": ";
            format_json(value, out, indent + 2);
            out += ++k < j.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
    } else {
        out += j.dump();
    }
}

} // namespace detail

/// Objects one key per line, arrays without nested objects on one line.
inline std::string format_json(const Json& j) {
    std::string out;
    detail::format_json(j, out, 0);
    return out + "\n";
}

/// Oracle answering for the model's source.
inline std::unique_ptr<Oracle> make_oracle(const ModelFile& m, double alpha = 0.05, double epsilon = 1e-9) {
    switch (m.kind) {
    case SourceKind::dag: return std::make_unique<DagOracle>(m.dag);
    case SourceKind::table: return std::make_unique<TableOracle>(m.arity(), m.probs, epsilon);
    case SourceKind::data: return std::make_unique<DataOracle>(m.arity(), m.rows, alpha);
    }
    return nullptr;
}

/// Graphviz digraph: every node declared, then the arcs sorted by (parent, child).
inline std::string emit_dot(const Dag& dag, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != dag.size()) throw InvalidArgument("graph and name list differ in size");
    std::string out = "digraph ordermap {\n";
    for (const auto& n : names) out += "  " + detail::dot_id(n) + ";\n";
    for (auto [p, c] : dag.arcs())
        out += "  " + detail::dot_id(names[static_cast<std::size_t>(p)]) + " -> " +
               detail::dot_id(names[static_cast<std::size_t>(c)]) + ";\n";
    out += "}\n";
    return out;
}

struct DotGraph {
    VariableTable variables;
    Dag dag;
};

namespace detail {

struct DotToken {
    enum Kind { id, arrow, undirected, lbrace, rbrace, lbracket, rbracket, semi, equals, comma, end } kind;
    std::string text;
    int line;
};

inline std::vector<DotToken> tokenize_dot(const std::string& s) {
    std::vector<DotToken> out;
    int line = 1;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) { throw InvalidArgument("DOT line " + std::to_string(line) + ": " + why); };
    while (i < s.size()) {
        const char ch = s[i];
        if (ch == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
        } else if (s.compare(i, 2, "//") == 0 || ch == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
        } else if (s.compare(i, 2, "/*") == 0) {
            const auto e = s.find("*/", i + 2);
            if (e == std::string::npos) fail("unterminated comment");
            for (std::size_t k = i; k < e; ++k) line += s[k] == '\n';
            i = e + 2;
        } else if (s.compare(i, 2, "->") == 0) {
            out.push_back({DotToken::arrow, "->", line});
            i += 2;
        } else if (s.compare(i, 2, "--") == 0) {
            out.push_back({DotToken::undirected, "--", line});
            i += 2;
        } else if (ch == '"') {
            std::string text;
            ++i;
            while (i < s.size() && s[i] != '"') {
                if (s[i] == '\\' && i + 1 < s.size()) ++i;
                if (s[i] == '\n') ++line;
                text += s[i++];
            }
            if (i >= s.size()) fail("unterminated string");
            ++i;
            out.push_back({DotToken::id, text, line});
        } else if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '-') {
            std::size_t e = i;
            while (e < s.size() && (std::isalnum(static_cast<unsigned char>(s[e])) || s[e] == '_' || s[e] == '.' ||
                                    (s[e] == '-' && e == i)))
                ++e;
            out.push_back({DotToken::id, s.substr(i, e - i), line});
            i = e;
        } else {
            DotToken::Kind k;
            switch (ch) {
            case '{': k = DotToken::lbrace; break;
            case '}': k = DotToken::rbrace; break;
            case '[': k = DotToken::lbracket; break;
            case ']': k = DotToken::rbracket; break;
            case ';': k = DotToken::semi; break;
            case '=': k = DotToken::equals; break;
            case ',': k = DotToken::comma; break;
            default: fail(std::string("unexpected character '") + ch + "'");
            }
            out.push_back({k, std::string(1, ch), line});
            ++i;
        }
    }
    out.push_back({DotToken::end, "", line});
    return out;
}

} // namespace detail

/// Read a digraph of plain node and arc statements. Attributes are ignored; nodes are numbered
/// in order of first appearance. Subgraphs are not supported.
inline DotGraph parse_dot(const std::string& text) {
    using detail::DotToken;
    const auto toks = detail::tokenize_dot(text);
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw InvalidArgument("DOT line " + std::to_string(toks[i].line) + ": " + why);
    };
    auto keyword = [&](const char* kw) {
        if (toks[i].kind != DotToken::id) return false;
        std::string lower = toks[i].text;
        for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        return lower == kw;
    };
    auto skip_attrs = [&] {
        while (toks[i].kind == DotToken::lbracket) {
            while (toks[i].kind != DotToken::rbracket) {
                if (toks[i].kind == DotToken::end) fail("unterminated attribute list");
                ++i;
            }
            ++i;
        }
    };

    if (keyword("strict")) ++i;
    if (!keyword("digraph")) fail("expected 'digraph'");
    ++i;
    if (toks[i].kind == DotToken::id) ++i;
    if (toks[i].kind != DotToken::lbrace) fail("expected '{'");
    ++i;

    std::vector<std::string> names;
    std::unordered_map<std::string, Var> index;
    std::vector<Arc> arcs;
    auto node = [&](const std::string& name) {
        auto [it, fresh] = index.emplace(name, static_cast<Var>(names.size()));
        if (fresh) {
            if (static_cast<int>(names.size()) >= max_variables) fail("too many nodes");
            names.push_back(name);
        }
        return it->second;
    };

    while (toks[i].kind != DotToken::rbrace) {
        if (toks[i].kind == DotToken::end) fail("expected '}'");
        if (toks[i].kind == DotToken::semi) {
            ++i;
            continue;
        }
        if (keyword("graph") || keyword("node") || keyword("edge")) {
            ++i;
            skip_attrs();
            continue;
        }
        if (keyword("subgraph") || toks[i].kind == DotToken::lbrace) fail("subgraphs are not supported");
        if (toks[i].kind != DotToken::id) fail("expected a node name, found '" + toks[i].text + "'");
        if (toks[i + 1].kind == DotToken::equals) {
            i += 3;  // graph attribute: id = id
            continue;
        }
        Var prev = node(toks[i++].text);
        while (toks[i].kind == DotToken::arrow || toks[i].kind == DotToken::undirected) {
            if (toks[i].kind == DotToken::undirected) fail("undirected edge in a digraph");
            ++i;
            if (toks[i].kind != DotToken::id) fail("expected a node name after '->'");
            const Var next = node(toks[i++].text);
            arcs.emplace_back(prev, next);
            prev = next;
        }
        skip_attrs();
    }
    if (names.empty()) fail("graph has no nodes");
    DotGraph g{VariableTable(names), Dag::from_arcs(static_cast<int>(names.size()), arcs)};
    return g;
}

inline Json names_of(const Ordering& order, const VariableTable& vars) {
    Json out = Json::array();
    for (Var v : order.sequence()) out.push_back(vars.name(v));
    return out;
}

inline Json names_of(VarSet s, const VariableTable& vars) {
    Json out = Json::array();
    for (Var v : s) out.push_back(vars.name(v));
    return out;
}

inline Json trace_step_json(const TraceStep& s, std::size_t index, const VariableTable& vars) {
    Json arcs = Json::array();
    for (auto [p, c] : s.arcs_removed) arcs.push_back({vars.name(p), vars.name(c)});
    Json j;
    j["step"] = index;
    j["op"] = s.op;
    j["clique"] = names_of(s.clique, vars);
    j["order_before"] = names_of(s.before.order, vars);
    j["order_after"] = names_of(s.after.order, vars);
    j["arcs_before"] = s.before.bmap.arc_count();
    j["arcs_after"] = s.after.bmap.arc_count();
    j["arcs_removed"] = arcs;
    j["oracle_queries"] = s.oracle_queries;
    if (!s.note.empty()) j["note"] = s.note;
    return j;
}

/// One JSON object per line.
inline void write_trace_jsonl(std::ostream& out, const RunTrace& trace, const VariableTable& vars) {
    for (std::size_t k = 0; k < trace.size(); ++k) out << trace_step_json(trace[k], k, vars).dump() << '\n';
}

} // namespace ordermap
