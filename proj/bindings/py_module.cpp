#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "trifactor/audit.hpp"
#include "trifactor/harness.hpp"
#include "trifactor/solver.hpp"
#include "trifactor/trace_io.hpp"

namespace py = pybind11;
using namespace trifactor;
using nlohmann::json;

namespace {

py::object to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null:
            return py::none();
        case json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float:
            return py::float_(j.get<double>());
        case json::value_t::string:
            return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(to_py(item));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (const auto& [key, value] : j.items()) out[py::str(key)] = to_py(value);
            return out;
        }
        default:
            return py::none();
    }
}

json to_json(py::handle obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        json out = json::object();
        for (const auto item : obj.cast<py::dict>())
            out[item.first.cast<std::string>()] = to_json(item.second);
        return out;
    }
    if (py::isinstance<py::sequence>(obj)) {
        json out = json::array();
        for (const auto item : obj.cast<py::sequence>()) out.push_back(to_json(item));
        return out;
    }
    throw py::type_error("cannot convert object to JSON");
}

GameTrace trace_from_py(py::handle obj) {
    if (py::isinstance<py::str>(obj)) return trace_from_string(obj.cast<std::string>());
    return trace_from_json(to_json(obj));
}

}  // namespace

PYBIND11_MODULE(trifactor, m) {
    m.doc() = "Waiter-Client triangle-factor game engine, auditor, and exact solver";

    py::register_exception<IllegalMoveError>(m, "IllegalMove", PyExc_ValueError);
    py::register_exception<CorruptTraceError>(m, "CorruptTrace", PyExc_ValueError);
    py::register_exception<BudgetExceededError>(m, "BudgetExceeded", PyExc_RuntimeError);

    m.def(
        "encode_edge",
        [](int n, int u, int v) { return encode_edge(n, u, v).index; },
        py::arg("n"), py::arg("u"), py::arg("v"),
        "Canonical index of the edge {u,v} of K_n.");
    m.def(
        "decode_edge",
        [](int index) { return decode_edge(EdgeId{index}); },
        py::arg("index"), "Vertex pair (u, v) with u < v for a canonical index.");
    m.def("min_factor_edges", &min_factor_edges, py::arg("n0"),
          "Fewest edges of a connected graph on n0 vertices with a triangle-factor.");
    m.def(
        "has_triangle_factor",
        [](int n, const std::vector<std::pair<int, int>>& edges) {
            if (n < 1 || n > kMaxVertices) throw std::invalid_argument("n must be in [1, 64]");
            std::vector<std::uint64_t> rows(n, 0);
            for (const auto& [a, b] : edges) {
                if (a < 0 || b < 0 || a >= n || b >= n || a == b)
                    throw std::invalid_argument("invalid edge");
                rows[a] |= std::uint64_t{1} << b;
                rows[b] |= std::uint64_t{1} << a;
            }
            const std::uint64_t cover = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
            return has_triangle_factor(rows, cover);
        },
        py::arg("n"), py::arg("edges"),
        "Whether the graph on vertices 0..n-1 splits into vertex-disjoint triangles.");

    m.def(
        "play_game",
        [](int n, const std::string& waiter, const std::string& client, std::uint64_t seed,
           const std::string& convention) {
            const GameConfig config{n, seed, convention_from_string(convention)};
            const GameTrace trace =
                play_game(config, make_waiter_policy(waiter), make_client_policy(client));
            return to_py(trace_to_json(trace));
        },
        py::arg("n"), py::arg("waiter") = "random", py::arg("client") = "avoid_crucial",
        py::arg("seed") = 0, py::arg("convention") = "waiter-leftover",
        "Play one seeded game; returns the trace as a dict.");
    m.def(
        "replay",
        [](py::handle trace) { return to_py(trace_to_json(replay_trace(trace_from_py(trace)))); },
        py::arg("trace"), "Replay a trace through a fresh engine; returns the regenerated trace.");
    m.def(
        "audit_trace",
        [](py::handle trace) { return to_py(report_to_json(audit(trace_from_py(trace)))); },
        py::arg("trace"),
        "Replay a trace (dict or JSON string) and check every structural claim.");
    m.def(
        "run_batch",
        [](int n, int games, std::uint64_t seed, const std::string& waiter,
           const std::string& client, const std::string& convention, bool audit_games,
           int threads, py::object trace_dir) {
            BatchConfig config;
            config.n = n;
            config.games = games;
            config.seed = seed;
            config.waiter = waiter;
            config.client = client;
            config.convention = convention_from_string(convention);
            config.audit = audit_games;
            config.threads = threads;
            if (!trace_dir.is_none()) config.trace_dir = trace_dir.cast<std::string>();
            const BatchSummary s = run_batch(config);
            py::dict out;
            out["n"] = s.n;
            out["games"] = s.games;
            out["waiter_wins"] = s.waiter_wins;
            out["min_rounds"] = s.min_rounds;
            out["max_rounds"] = s.max_rounds;
            out["max_declarations"] = s.max_declarations;
            out["violations"] = s.violations;
            out["difficult_rounds"] = s.difficult_rounds;
            out["states_checked"] = s.states_checked;
            return out;
        },
        py::arg("n"), py::arg("games"), py::arg("seed") = 0, py::arg("waiter") = "random",
        py::arg("client") = "avoid_crucial", py::arg("convention") = "waiter-leftover",
        py::arg("audit") = false, py::arg("threads") = 0, py::arg("trace_dir") = py::none(),
        "Play a seeded batch; returns the summary as a dict.");
    m.def(
        "solve",
        [](int n, const std::string& convention, std::uint64_t budget, std::size_t table_budget,
           bool pv) {
            SolverOptions options;
            options.node_budget = budget;
            options.table_budget = table_budget;
            Solver solver(n, convention_from_string(convention), options);
            const SolveOutcome outcome = solver.solve();
            json j;
            j["n"] = n;
            j["convention"] = convention;
            j["outcome"] = outcome.waiter_wins() ? "waiter_wins_in" : "client_wins";
            j["value"] = outcome.waiter_rounds ? json(*outcome.waiter_rounds) : json(nullptr);
            j["nodes"] = solver.stats().nodes;
            j["table_entries"] = solver.stats().table_entries;
            j["seconds"] = solver.stats().seconds;
            if (pv) {
                json line = json::array();
                for (const auto& step : solver.principal_variation()) {
                    const auto [a1, b1] = decode_edge(step.offer.first);
                    const auto [a2, b2] = decode_edge(step.offer.second);
                    const auto [pa, pb] = decode_edge(step.pick);
                    line.push_back({{"offered", {{a1, b1}, {a2, b2}}}, {"pick", {pa, pb}}});
                }
                j["pv"] = std::move(line);
            }
            return to_py(j);
        },
        py::arg("n"), py::arg("convention") = "waiter-leftover",
        py::arg("budget") = std::uint64_t{1'000'000'000},
        py::arg("table_budget") = std::size_t{50'000'000}, py::arg("pv") = false,
        "Exact minimax value of the fresh board for small n.");

    m.def("waiter_policies", &waiter_policy_names);
    m.def("client_policies", &client_policy_names);
}
