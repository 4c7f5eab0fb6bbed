#include "trifactor/trace_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace trifactor {

namespace {

using nlohmann::json;


json edge_json(int n, EdgeId e) {
    const auto [u, v] = decode_edge(e);
    if (v >= n) throw CorruptTraceError("edge outside the board");
    return json::array({u, v});
}

EdgeId edge_from_json(int n, const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw CorruptTraceError("edge must be a [u, v] vertex pair");
    const Vertex u = j[0].get<Vertex>();
    const Vertex v = j[1].get<Vertex>();
    if (u < 0 || v < 0 || u >= n || v >= n || u >= v)
        throw CorruptTraceError("edge vertices must satisfy 0 <= u < v < n");
    return encode_edge(n, u, v);
}

std::vector<Vertex> vertices_from_json(int n, const json& j, const char* what) {
    if (!j.is_array()) throw CorruptTraceError(std::string(what) + " must be an array");
    std::vector<Vertex> out;
    Vertex prev = -1;
    for (const auto& item : j) {
        if (!item.is_number_integer()) throw CorruptTraceError(std::string(what) + ": bad vertex");
        const Vertex v = item.get<Vertex>();
        if (v < 0 || v >= n || v <= prev)
            throw CorruptTraceError(std::string(what) + ": vertices must be sorted and in range");
        out.push_back(v);
        prev = v;
    }
    return out;
}

const json& field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw CorruptTraceError(std::string("missing field: ") + key);
    return *it;
}

}  // namespace

nlohmann::json trace_to_json(const GameTrace& trace) {
    json j;
    j["version"] = 1;
    j["n"] = trace.n;
    j["waiter"] = trace.waiter_name;
    j["client"] = trace.client_name;
    j["seed"] = trace.seed;
    j["convention"] = to_string(trace.convention);
    json rounds = json::array();
    for (const LedgerEntry& e : trace.rounds) {
        json r;
        r["i"] = e.round;
        r["offered"] = json::array(
            {edge_json(trace.n, e.offered.first), edge_json(trace.n, e.offered.second)});
        r["crucial"] = json::array({e.crucial[0], e.crucial[1]});
        r["pick"] = edge_json(trace.n, e.pick);
        r["A"] = e.a_set;
        r["B"] = e.b_set;
        r["difficult"] = e.difficult;
        if (e.declaration) {
            json d;
            d["vertices"] = e.declaration->vertices;
            r["declaration"] = d;
        } else {
            r["declaration"] = nullptr;
        }
        rounds.push_back(std::move(r));
    }
    j["rounds"] = std::move(rounds);
    json outcome;
    outcome["winner"] = trace.outcome.winner == Winner::Waiter ? "waiter" : "client";
    if (trace.outcome.rounds)
        outcome["rounds"] = *trace.outcome.rounds;
    else
        outcome["rounds"] = nullptr;
    j["outcome"] = std::move(outcome);
    return j;
}

GameTrace trace_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw CorruptTraceError("trace must be a JSON object");
    if (field(j, "version").get<int>() != 1) throw CorruptTraceError("unsupported trace version");
    GameTrace t;
    t.n = field(j, "n").get<int>();
    if (t.n < 3 || t.n > kMaxVertices) throw CorruptTraceError("trace n out of range");
    t.waiter_name = field(j, "waiter").get<std::string>();
    t.client_name = field(j, "client").get<std::string>();
    t.seed = field(j, "seed").get<std::uint64_t>();
    t.convention = convention_from_string(field(j, "convention").get<std::string>());

    for (const auto& r : field(j, "rounds")) {
        LedgerEntry e;
        e.round = field(r, "i").get<int>();
        const auto& offered = field(r, "offered");
        if (!offered.is_array() || offered.size() != 2)
            throw CorruptTraceError("offered must hold two edges");
        e.offered = OfferPair{edge_from_json(t.n, offered[0]), edge_from_json(t.n, offered[1])};
        const auto& crucial = field(r, "crucial");
        if (!crucial.is_array() || crucial.size() != 2)
            throw CorruptTraceError("crucial must hold two booleans");
        e.crucial = {crucial[0].get<bool>(), crucial[1].get<bool>()};
        e.pick = edge_from_json(t.n, field(r, "pick"));
        e.a_set = vertices_from_json(t.n, field(r, "A"), "A");
        e.b_set = vertices_from_json(t.n, field(r, "B"), "B");
        e.difficult = field(r, "difficult").get<bool>();
        const auto& decl = field(r, "declaration");
        if (!decl.is_null()) {
            DeclarationEvent ev;
            ev.round = e.round;
            ev.vertices = vertices_from_json(t.n, field(decl, "vertices"), "declaration.vertices");
            e.declaration = std::move(ev);
        }
        t.rounds.push_back(std::move(e));
    }

    const auto& outcome = field(j, "outcome");
    const auto winner = field(outcome, "winner").get<std::string>();
    if (winner == "waiter")
        t.outcome.winner = Winner::Waiter;
    else if (winner == "client")
        t.outcome.winner = Winner::Client;
    else
        throw CorruptTraceError("outcome.winner must be \"waiter\" or \"client\"");
    const auto& rounds = field(outcome, "rounds");
    if (!rounds.is_null()) t.outcome.rounds = rounds.get<int>();
    if (t.outcome.winner == Winner::Waiter && !t.outcome.rounds)
        throw CorruptTraceError("a waiter win must record its round count");
    return t;
}

std::string trace_to_string(const GameTrace& trace) {
    return trace_to_json(trace).dump(2) + "\n";
}

GameTrace trace_from_string(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw CorruptTraceError("trace is not valid JSON");
    return trace_from_json(j);
}

GameTrace load_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorruptTraceError("cannot open trace file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return trace_from_string(text);
}

void save_trace(const GameTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file: " + path);
    out << trace_to_string(trace);
}

nlohmann::json report_to_json(const AuditReport& report) {
    json j;
    j["n"] = report.n;
    j["waiter"] = report.waiter_name;
    j["client"] = report.client_name;
    j["convention"] = to_string(report.convention);
    j["rounds_replayed"] = report.rounds_replayed;
    j["declarations"] = report.declarations;
    j["difficult_rounds"] = report.difficult_rounds;
    j["client_edges"] = report.client_edges;
    j["partial"] = report.partial;
    json outcome;
    outcome["winner"] = report.outcome.winner == Winner::Waiter ? "waiter" : "client";
    outcome["rounds"] = report.outcome.rounds ? json(*report.outcome.rounds) : json(nullptr);
    j["outcome"] = std::move(outcome);
    j["states_checked"] = report.states_checked;
    j["components_checked"] = report.components_checked;
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"check", v.check}, {"round", v.round}, {"message", v.message}});
    j["violations"] = std::move(violations);
    j["skipped_checks"] = report.skipped_checks;
    j["passed"] = report.passed();
    return j;
}

}  // namespace trifactor
