#include "trifactor/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <thread>

#include "trifactor/trace_io.hpp"

namespace trifactor {

namespace {

GameTrace run_loop(const GameConfig& config, const WaiterPolicy& waiter,
                   const ClientPolicy& client) {
    if (config.n % 3 != 0 || config.n < 3)
        throw std::invalid_argument("play_game: n must be a positive multiple of 3");
    GameState state(config.n, config.convention);
    Rng rng(config.seed);

    while (state.finished == Winner::Undecided) {
        if (state.board.unclaimed_count() < 2) {
            finish_leftovers(state);
            break;
        }
        const OfferPair offer = normalize_offer(waiter.offer(state, rng));
        const std::array<bool, 2> crucial = {is_crucial(state, offer.first),
                                             is_crucial(state, offer.second)};
        const EdgeId pick = client.pick(state, offer, crucial);
        resolve_round(state, offer, pick);
    }

    GameTrace trace;
    trace.n = config.n;
    trace.waiter_name = waiter.name;
    trace.client_name = client.name;
    trace.seed = config.seed;
    trace.convention = config.convention;
    trace.rounds = std::move(state.ledger);
    trace.outcome.winner = state.finished == Winner::Waiter ? Winner::Waiter : Winner::Client;
    if (state.finished == Winner::Waiter) trace.outcome.rounds = state.round;
    return trace;
}

}  // namespace

GameTrace play_game(const GameConfig& config, const WaiterPolicy& waiter,
                    const ClientPolicy& client) {
    return run_loop(config, waiter, client);
}

GameTrace replay_trace(const GameTrace& trace) {
    std::vector<OfferPair> offers;
    std::vector<EdgeId> picks;
    offers.reserve(trace.rounds.size());
    picks.reserve(trace.rounds.size());
    for (const LedgerEntry& e : trace.rounds) {
        offers.push_back(e.offered);
        picks.push_back(e.pick);
    }
    WaiterPolicy waiter = make_waiter_scripted(std::move(offers));
    ClientPolicy client = make_client_scripted(std::move(picks));
    GameConfig config{trace.n, trace.seed, trace.convention};

    GameState state(config.n, config.convention);
    Rng rng(config.seed);
    for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
        const OfferPair offer = waiter.offer(state, rng);
        const std::array<bool, 2> crucial = {is_crucial(state, offer.first),
                                             is_crucial(state, offer.second)};
        resolve_round(state, offer, client.pick(state, offer, crucial));
    }
    if (state.finished == Winner::Undecided && state.board.unclaimed_count() < 2)
        finish_leftovers(state);

    GameTrace out;
    out.n = trace.n;
    out.waiter_name = trace.waiter_name;
    out.client_name = trace.client_name;
    out.seed = trace.seed;
    out.convention = trace.convention;
    out.rounds = std::move(state.ledger);
    if (state.finished == Winner::Waiter)
        out.outcome = {Winner::Waiter, state.round};
    else
        out.outcome = {Winner::Client, std::nullopt};
    return out;
}

BatchSummary run_batch(const BatchConfig& config) {
    if (config.n % 3 != 0 || config.n < 3)
        throw std::invalid_argument("run_batch: n must be a positive multiple of 3");
    if (config.games < 1) throw std::invalid_argument("run_batch: games must be positive");

    if (config.trace_dir) std::filesystem::create_directories(*config.trace_dir);

    struct GameResult {
        bool waiter_win = false;
        int rounds = 0;
        int declarations = 0;
        int difficult = 0;
        std::int64_t violations = 0;
        std::int64_t states_checked = 0;
        std::int64_t components_checked = 0;
    };
    std::vector<GameResult> results(config.games);

    int threads = config.threads > 0 ? config.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, config.games);

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        const WaiterPolicy waiter = make_waiter_policy(config.waiter);
        const ClientPolicy client = make_client_policy(config.client);
        try {
            while (true) {
                const int idx = next.fetch_add(1);
                if (idx >= config.games || failed.load()) break;
                GameConfig game{config.n, derive_seed(config.seed, idx), config.convention};
                const GameTrace trace = play_game(game, waiter, client);

                GameResult& r = results[idx];
                r.waiter_win = trace.outcome.winner == Winner::Waiter;
                r.rounds = trace.outcome.rounds.value_or(0);
                for (const auto& e : trace.rounds) {
                    r.declarations += e.declaration.has_value();
                    r.difficult += e.difficult;
                }
                if (config.audit) {
                    const AuditReport report = audit(trace);
                    r.violations = static_cast<std::int64_t>(report.violations.size());
                    r.states_checked = report.states_checked;
                    r.components_checked = report.components_checked;
                    r.declarations = report.declarations;
                }
                if (config.trace_dir) {
                    char name[32];
                    std::snprintf(name, sizeof(name), "trace_%06d.json", idx);
                    save_trace(trace, (std::filesystem::path(*config.trace_dir) / name).string());
                }
            }
        } catch (const std::exception& e) {
            failed.store(true);
            const std::lock_guard lock(failure_mutex);
            if (failure.empty()) failure = e.what();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) throw std::runtime_error("run_batch: " + failure);

    BatchSummary s;
    s.n = config.n;
    s.games = config.games;
    for (const GameResult& r : results) {
        if (r.waiter_win) {
            ++s.waiter_wins;
            s.min_rounds = s.min_rounds == 0 ? r.rounds : std::min(s.min_rounds, r.rounds);
            s.max_rounds = std::max(s.max_rounds, r.rounds);
        }
        s.max_declarations = std::max(s.max_declarations, r.declarations);
        s.violations += r.violations;
        s.difficult_rounds += r.difficult;
        s.states_checked += r.states_checked;
        s.components_checked += r.components_checked;
    }
    return s;
}

std::string summary_csv_header() { return "n,games,waiter_wins,min_rounds,max_declarations,violations\n"; }

std::string summary_csv_row(const BatchSummary& s) {
    return std::to_string(s.n) + "," + std::to_string(s.games) + "," +
           std::to_string(s.waiter_wins) + "," + std::to_string(s.min_rounds) + "," +
           std::to_string(s.max_declarations) + "," + std::to_string(s.violations) + "\n";
}

}  // namespace trifactor
