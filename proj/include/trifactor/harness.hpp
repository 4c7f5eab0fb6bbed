#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "trifactor/audit.hpp"
#include "trifactor/engine.hpp"
#include "trifactor/strategies.hpp"

namespace trifactor {

struct GameConfig {
    int n = 6;
    std::uint64_t seed = 0;
    Convention convention = Convention::WaiterLeftover;
};

// Runs one game to completion: offers from the Waiter policy, picks from the
// Client policy, leftovers by convention.
GameTrace play_game(const GameConfig& config, const WaiterPolicy& waiter,
                    const ClientPolicy& client);

// Replays a trace's offers and picks through a fresh engine; the result must
// equal the input for any engine-produced trace.
GameTrace replay_trace(const GameTrace& trace);

struct BatchConfig {
    int n = 12;
    int games = 100;
    std::uint64_t seed = 0;
    std::string waiter = "random";
    std::string client = "avoid_crucial";
    Convention convention = Convention::WaiterLeftover;
    bool audit = false;
    int threads = 0;  // 0: hardware concurrency
    std::optional<std::string> trace_dir;
};

struct BatchSummary {
    int n = 0;
    int games = 0;
    int waiter_wins = 0;
    int min_rounds = 0;  // over Waiter wins; 0 when there are none
    int max_declarations = 0;
    std::int64_t violations = 0;

    // extras, reported but not part of the CSV schema
    int max_rounds = 0;  // over Waiter wins
    std::int64_t difficult_rounds = 0;
    std::int64_t states_checked = 0;      // audit mode only
    std::int64_t components_checked = 0;  // audit mode only
};

// Games are independent; each draws its stream from (seed, game index), so
// the summary is identical for any thread count.
BatchSummary run_batch(const BatchConfig& config);

std::string summary_csv_header();
std::string summary_csv_row(const BatchSummary& s);

}  // namespace trifactor
