#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace trifactor {

// A move that violates the game contract (claimed edge, pick not offered,
// edge already in Client's graph, ...).
struct IllegalMoveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A trace that cannot be replayed: malformed JSON, illegal offers or picks
// at replay time, or an exhausted offer script.
struct CorruptTraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structural invariant the engine relies on failed at runtime. Signals an
// engine bug, never a property of the input.
struct InvariantViolationError : std::logic_error {
    using std::logic_error::logic_error;
};

// Solver node budget exhausted; carries partial search statistics.
struct BudgetExceededError : std::runtime_error {
    BudgetExceededError(std::string msg, std::uint64_t nodes, std::size_t table_entries)
        : std::runtime_error(std::move(msg)), nodes(nodes), table_entries(table_entries) {}

    std::uint64_t nodes = 0;
    std::size_t table_entries = 0;
};

}  // namespace trifactor
