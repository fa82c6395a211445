#pragma once

#include "qexpand/numeric.hpp"
#include "qexpand/serialize.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qexpand {

enum class Command { verify, qverify, coeffs, schmidt, discover, guess, scan };

// A fully resolved request, as assembled from command-line flags. The grid
// commands (verify, qverify, discover) walk k = 0..k and i = 0..i; coeffs
// treats k as the exact index to expand. Unused fields are ignored by the
// command that does not read them.
struct RunConfig {
    Command command = Command::verify;
    std::string family;     // registry id: "C-2.1.1", "Q-3.1.2:c=1", "D:d=2", ...
    long k = 6;             // grid bound, or exact index for coeffs
    long i = 6;             // grid bound
    long r = 1;             // power to expand / scan bound
    long d = 2;             // scan: the family parameter of D:d
    long nmax = 12;         // schmidt: largest index computed
    long max_order = 2;     // guess: recurrence order cap
    long max_coeff_degree = 2; // guess: coefficient degree cap
    std::vector<Int> sequence; // guess: the terms t(0..M)
    OutputFormat format = OutputFormat::plain;
    long jobs = 1;          // worker threads for grid commands
    std::string cache_dir;  // empty: caching disabled
    long seed = 0;          // part of the cache key; reserved for randomized commands
    // Test hook: adds +1 to S at one (k, j, i) cell before verifying, to
    // demonstrate end to end that a wrong table cannot slip through.
    std::optional<std::array<long, 3>> mutate_s;
};

inline constexpr int kExitOk = 0;        // all proved / all consistent
inline constexpr int kExitFalsified = 1; // at least one falsification or non-integrality
inline constexpr int kExitUsage = 2;     // unusable request

// Executes one command. Serialized results go to out; warnings and error
// messages go to err. The bytes written to out are deterministic for a
// fixed config: the worker count changes the schedule, never the output
// (cells are emitted in canonical index order), and a cache hit replays
// exactly the bytes the uncached run produced.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace qexpand
