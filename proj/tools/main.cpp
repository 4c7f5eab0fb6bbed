// Command-line front end: seeded batch simulation, exact solving, trace
// auditing, and an interactive mode where a human offers edge pairs against
// the engine's Client.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "trifactor/audit.hpp"
#include "trifactor/harness.hpp"
#include "trifactor/solver.hpp"
#include "trifactor/trace_io.hpp"

namespace {

using namespace trifactor;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssertion = 2;
constexpr int kExitResource = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_game_size(int n) {
    if (n < 3 || n % 3 != 0 || n > kMaxVertices)
        throw UsageError("--n must be a multiple of 3 in [3, 63]");
}

std::string known_policies() {
    std::string out = "waiters:";
    for (const auto& w : waiter_policy_names()) out += " " + w;
    out += "; clients:";
    for (const auto& c : client_policy_names()) out += " " + c;
    return out;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    int n = 12;
    int games = 100;
    std::uint64_t seed = 0;
    std::string waiter = "random";
    std::string client = "avoid_crucial";
    std::string convention = "waiter-leftover";
    bool audit = false;
    std::string trace_dir;
    std::string out;
    int threads = 0;
};

int cmd_simulate(const SimulateArgs& args) {
    require_game_size(args.n);
    BatchConfig config;
    config.n = args.n;
    config.games = args.games;
    config.seed = args.seed;
    try {
        make_waiter_policy(args.waiter);
        make_client_policy(args.client);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()) + " (" + known_policies() + ")");
    }
    config.waiter = args.waiter;
    config.client = args.client;
    config.convention = convention_from_string(args.convention);
    config.audit = args.audit;
    config.threads = args.threads;
    if (!args.trace_dir.empty()) config.trace_dir = args.trace_dir;

    const BatchSummary summary = run_batch(config);
    const std::string csv = summary_csv_header() + summary_csv_row(summary);
    std::cout << csv;
    if (!args.out.empty()) {
        std::ofstream f(args.out);
        if (!f) throw std::ios_base::failure("cannot write " + args.out);
        f << csv;
    }
    if (config.audit) {
        std::cerr << "audited " << summary.games << " games: " << summary.violations
                  << " violations, " << summary.states_checked << " states checked\n";
        if (summary.violations > 0) return kExitAssertion;
    }
    return kExitOk;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
    int n = 6;
    std::string convention = "waiter-leftover";
    std::uint64_t budget = 1'000'000'000;
    std::size_t table_budget = 50'000'000;
    bool pv = false;
    bool canonical = false;
    int canonical_rounds = 2;
};

int cmd_solve(const SolveArgs& args) {
    require_game_size(args.n);
    SolverOptions options;
    options.node_budget = args.budget;
    options.table_budget = args.table_budget;
    options.canonical = args.canonical;
    options.canonical_rounds = args.canonical_rounds;

    json j;
    j["n"] = args.n;
    j["convention"] = args.convention;
    try {
        Solver solver(args.n, convention_from_string(args.convention), options);
        const SolveOutcome outcome = solver.solve();
        json pv = json::array();
        if (args.pv) {
            for (const auto& step : solver.principal_variation()) {
                const auto [a1, b1] = decode_edge(step.offer.first);
                const auto [a2, b2] = decode_edge(step.offer.second);
                const auto [pa, pb] = decode_edge(step.pick);
                pv.push_back({{"offered", {{a1, b1}, {a2, b2}}}, {"pick", {pa, pb}}});
            }
        }
        j["outcome"] = outcome.waiter_wins() ? "waiter_wins_in" : "client_wins";
        j["value"] = outcome.waiter_rounds ? json(*outcome.waiter_rounds) : json(nullptr);
        j["nodes"] = solver.stats().nodes;
        j["table_entries"] = solver.stats().table_entries;
        j["seconds"] = solver.stats().seconds;
        if (args.pv) j["pv"] = pv;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const BudgetExceededError& e) {
        j["outcome"] = "budget_exceeded";
        j["error"] = e.what();
        j["nodes"] = e.nodes;
        j["table_entries"] = e.table_entries;
        std::cout << j.dump(2) << "\n";
        return kExitResource;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------- audit

const char* const kCheckCatalog[] = {
    "crucial_uniqueness",      "fastpath_equivalence",          "crucial_fresh_vertices",
    "difficult_b_size",  "b_disjoint",                    "ledger_divergence",
    "declaration_implies_difficult",                   "declaration_budget",
    "win_edge_bound",                           "win_round_bound",
    "outcome_divergence",
};

int cmd_audit(const std::vector<std::string>& paths) {
    bool all_passed = true;
    for (const std::string& path : paths) {
        const GameTrace trace = load_trace(path);
        const AuditReport report = audit(trace);
        std::cout << path << ": n=" << report.n << " waiter=" << report.waiter_name
                  << " client=" << report.client_name
                  << " rounds=" << report.rounds_replayed
                  << " declarations=" << report.declarations
                  << " difficult=" << report.difficult_rounds
                  << " outcome=" << (report.partial ? "partial"
                                     : report.outcome.winner == Winner::Waiter ? "waiter"
                                                                               : "client")
                  << "\n";
        for (const char* check : kCheckCatalog) {
            bool skipped = false;
            for (const auto& s : report.skipped_checks)
                if (s.rfind(check, 0) == 0) {
                    std::cout << "  SKIP " << s << "\n";
                    skipped = true;
                }
            if (skipped) continue;
            std::string rounds;
            int failures = 0;
            for (const auto& v : report.violations) {
                if (v.check != check) continue;
                ++failures;
                if (v.round >= 0) rounds += " round " + std::to_string(v.round) + ":";
                rounds += " " + v.message + ";";
            }
            if (failures == 0)
                std::cout << "  PASS " << check << "\n";
            else
                std::cout << "  FAIL " << check << ":" << rounds << "\n";
        }
        if (!report.passed()) all_passed = false;
    }
    return all_passed ? kExitOk : kExitAssertion;
}

// -------------------------------------------------------------------- play

struct PlayArgs {
    int n = 6;
    std::string convention = "waiter-leftover";
    std::string trace_out;
};

void print_position(const GameState& s) {
    const int n = s.board.n();
    std::cout << "round " << s.round << ", declarations " << s.client.declarations().size()
              << " (bound n/6 = " << n / 6 << "), unclaimed " << s.board.unclaimed_count()
              << "\n";
    int isolated = 0;
    for (const Vertex root : s.client.component_roots()) {
        const auto& comp = s.client.component(root);
        if (comp.size() == 1) {
            ++isolated;
            continue;
        }
        std::vector<Vertex> vs = comp.vertices;
        std::sort(vs.begin(), vs.end());
        std::cout << "  {";
        for (std::size_t i = 0; i < vs.size(); ++i) std::cout << (i ? "," : "") << vs[i];
        std::cout << "} edges=" << comp.edge_count << (comp.good ? " good" : " bad");
        if (const auto crucial = find_crucial_edge(s.client, s.board, root)) {
            const auto [a, b] = decode_edge(*crucial);
            std::cout << " crucial={" << a << "," << b << "}";
        }
        std::cout << "\n";
    }
    if (isolated > 0) std::cout << "  (" << isolated << " isolated vertices)\n";
}

std::optional<OfferPair> parse_offer(const std::string& line, int n, std::string& error) {
    std::string cleaned = line;
    for (char& c : cleaned)
        if (c == ',' || c == '-') c = ' ';
    std::istringstream in(cleaned);
    std::vector<int> vs;
    int v;
    while (in >> v) vs.push_back(v);
    if (!in.eof()) {
        error = "expected four vertex numbers, e.g. \"0 1, 2 3\"";
        return std::nullopt;
    }
    if (vs.size() != 4) {
        error = "expected four vertex numbers, e.g. \"0 1, 2 3\"";
        return std::nullopt;
    }
    for (const int x : vs)
        if (x < 0 || x >= n) {
            error = "vertex " + std::to_string(x) + " out of range [0, " + std::to_string(n) + ")";
            return std::nullopt;
        }
    if (vs[0] == vs[1] || vs[2] == vs[3]) {
        error = "an edge needs two distinct endpoints";
        return std::nullopt;
    }
    const EdgeId e1 = encode_edge(n, vs[0], vs[1]);
    const EdgeId e2 = encode_edge(n, vs[2], vs[3]);
    if (e1 == e2) {
        error = "the two offered edges must differ";
        return std::nullopt;
    }
    return OfferPair{e1, e2};
}

int cmd_play(const PlayArgs& args) {
    require_game_size(args.n);
    const Convention convention = convention_from_string(args.convention);
    GameState state(args.n, convention);
    const ClientPolicy client = make_client_avoid_crucial();

    const auto write_trace = [&](Winner winner, std::optional<int> rounds) {
        if (args.trace_out.empty()) return;
        GameTrace trace;
        trace.n = args.n;
        trace.waiter_name = "human";
        trace.client_name = client.name;
        trace.seed = 0;
        trace.convention = convention;
        trace.rounds = state.ledger;
        trace.outcome = {winner, rounds};
        save_trace(trace, args.trace_out);
        std::cout << "trace written to " << args.trace_out << "\n";
    };

    std::cout << "You are Waiter on K_" << args.n
              << ". Offer two unclaimed edges per round as \"u v, x y\"; Client keeps one.\n"
              << "Client wins if the board runs out before his graph spans " << args.n / 3
              << " disjoint triangles. 7n/6 = " << (7.0 * args.n / 6.0) << " rounds.\n";
    print_position(state);

    std::string line;
    while (true) {
        if (state.board.unclaimed_count() < 2) {
            finish_leftovers(state);
            break;
        }
        std::cout << "offer> " << std::flush;
        if (!std::getline(std::cin, line)) {
            std::cout << "\n";
            write_trace(Winner::Client, std::nullopt);
            return kExitOk;
        }
        if (line == "q" || line == "quit") {
            write_trace(Winner::Client, std::nullopt);
            return kExitOk;
        }
        if (line.empty() || line == "help") {
            std::cout << "enter \"u v, x y\" to offer edges {u,v} and {x,y}; q to quit\n";
            continue;
        }
        std::string error;
        const auto offer = parse_offer(line, args.n, error);
        if (!offer) {
            std::cout << "cannot parse: " << error << "\n";
            continue;
        }
        if (state.board.state(offer->first) != EdgeState::Unclaimed ||
            state.board.state(offer->second) != EdgeState::Unclaimed) {
            std::cout << "illegal offer: one of the edges is already claimed\n";
            continue;
        }
        const OfferPair norm = normalize_offer(*offer);
        const std::array<bool, 2> crucial = {is_crucial(state, norm.first),
                                             is_crucial(state, norm.second)};
        const EdgeId pick = client.pick(state, norm, crucial);
        const auto& entry = resolve_round(state, norm, pick);
        const auto [pa, pb] = decode_edge(pick);
        std::cout << "Client takes {" << pa << "," << pb << "}";
        if (entry.difficult) std::cout << " (difficult round: both offers were crucial)";
        if (entry.declaration) std::cout << " -> new good component";
        std::cout << "\n";
        print_position(state);
        if (state.finished == Winner::Waiter) break;
    }

    if (state.finished == Winner::Waiter) {
        std::cout << "Waiter wins in " << state.round << " rounds (7n/6 = "
                  << (7.0 * args.n / 6.0) << ")\n";
        write_trace(Winner::Waiter, state.round);
    } else {
        std::cout << "Client wins: the board ran out after " << state.round << " rounds\n";
        write_trace(Winner::Client, std::nullopt);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Waiter-Client triangle-factor game engine and solver"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Play seeded game batches, summarize as CSV");
    simulate->add_option("--n", sim.n, "vertex count (multiple of 3)")->required();
    simulate->add_option("--games", sim.games, "number of games");
    simulate->add_option("--seed", sim.seed, "batch seed");
    simulate->add_option("--waiter", sim.waiter, "waiter policy");
    simulate->add_option("--client", sim.client, "client policy");
    simulate->add_option("--convention", sim.convention, "leftover convention")
        ->check(CLI::IsMember({"waiter-leftover", "client-leftover"}));
    simulate->add_flag("--audit", sim.audit, "replay and check every game");
    simulate->add_option("--trace-dir", sim.trace_dir, "write one JSON trace per game");
    simulate->add_option("--out", sim.out, "also write the CSV here");
    simulate->add_option("--threads", sim.threads, "worker threads (0 = hardware)");

    SolveArgs sol;
    auto* solve = app.add_subcommand("solve", "Exact minimax game value for small boards");
    solve->add_option("--n", sol.n, "vertex count (multiple of 3)")->required();
    solve->add_option("--convention", sol.convention, "leftover convention")
        ->check(CLI::IsMember({"waiter-leftover", "client-leftover"}));
    solve->add_option("--budget", sol.budget, "node expansion budget");
    solve->add_option("--table-budget", sol.table_budget, "transposition entry budget");
    solve->add_flag("--pv", sol.pv, "dump the principal variation");
    solve->add_flag("--canonical", sol.canonical, "canonicalize shallow table keys (n <= 7)");
    solve->add_option("--canonical-rounds", sol.canonical_rounds,
                      "canonicalize positions with at most this many rounds");

    std::vector<std::string> audit_paths;
    auto* audit_cmd = app.add_subcommand("audit", "Replay trace files and check the ledger");
    audit_cmd->add_option("traces", audit_paths, "trace JSON files")->required();

    PlayArgs play;
    auto* play_cmd = app.add_subcommand("play", "Interactive: you are Waiter");
    play_cmd->add_option("--n", play.n, "vertex count (multiple of 3)");
    play_cmd->add_option("--convention", play.convention, "leftover convention")
        ->check(CLI::IsMember({"waiter-leftover", "client-leftover"}));
    play_cmd->add_option("--trace-out", play.trace_out, "write the game trace here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim);
        if (solve->parsed()) return cmd_solve(sol);
        if (audit_cmd->parsed()) return cmd_audit(audit_paths);
        if (play_cmd->parsed()) return cmd_play(play);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CorruptTraceError& e) {
        std::cerr << "corrupt trace: " << e.what() << "\n";
        return kExitAssertion;
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    }
    return kExitOk;
}
