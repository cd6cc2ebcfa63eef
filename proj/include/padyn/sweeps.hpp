#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "padyn/dynamics.hpp"
#include "padyn/number_field.hpp"
#include "padyn/residue_oracle.hpp"

namespace padyn {

/// Settings shared by the randomized sweeps. Every sweep seeds its own
/// generator from (seed, sweep name), so rows are reproducible on their own
/// and independent of the order in which they run.
struct SweepOptions {
    std::uint64_t seed = 1;
    int samples = 100;
    int levels = 3;  // oracle levels M = 1..levels (skipped above the budget)
    int precision = 32;
    std::uint64_t budget = kDefaultOracleBudget;
};

/// One row of a sweep table: how many instances ran, how many failed, and
/// the first few failing instances in full.
struct SweepRow {
    static constexpr std::size_t kMaxDumps = 5;
    std::string name;
    int instances = 0;
    int failures = 0;
    std::vector<nlohmann::json> dumps;
    std::vector<std::string> notes;

    bool passed() const { return instances > 0 && failures == 0; }
    void record(bool ok, nlohmann::json dump);
    nlohmann::json to_json() const;
    Check as_check() const;
};

/// Random (*) maps of degree p and 2p: count <= p^f, every lifted point is
/// periodic with its residue period, and the oracle count agrees.
SweepRow sweep_star(long p, int f, const SweepOptions& opt);
/// X^p + c with random integral c; same assertions as sweep_star.
SweepRow sweep_unicritical(long p, int f, const SweepOptions& opt);
/// Random (**) maps of degree p^k with f | k or a0 in Q: exactly p^f points,
/// each exact period dividing m.
SweepRow sweep_star_star(long p, int f, int k, const SweepOptions& opt);
/// X^2 + omega over the unramified quadratic extension of Q_2 (omega a
/// primitive cube root of unity): a point of exact period 4, which does not
/// divide m = 2, with the hypothesis f | k or a0 in Q reported as failing.
SweepRow nonexample_check(int precision = 32);

/// X^2 + r/s over the unramified degree-f extension of Q_2 for
/// r in [-20, 20], s in {1, 3, 5}. `literal` asserts every exact period
/// equals f (rf even) or 2f (rf odd); otherwise asserts phi^m(x) = x for
/// every point and that the exact periods have lcm m.
SweepRow sweep_period_law(int f, bool literal, const SweepOptions& opt);

/// classify_quadratic over random c integral at 2: all ledger checks pass,
/// the count lies in the allowed set and is never 3.
SweepRow sweep_classification(long delta, const SweepOptions& opt);

/// Known portrait labels (suffixes stripped) for Q(i) and Q(sqrt -3).
std::optional<std::vector<std::string>> known_portrait_labels(long delta);
/// Portraits for random c = a + b w (|a|, |b| <= 4, w the standard integral
/// generator) must carry a label from known_portrait_labels(delta).
SweepRow sweep_portraits(long delta, const SweepOptions& opt);

/// Periodic counts of phi on O_F / pi^M for M = 1..levels, compared with the
/// number of lifted periodic points.
SweepRow oracle_stability(const DynPoly& phi, const FieldDescriptor& F, int levels,
                          std::uint64_t budget = kDefaultOracleBudget);

}  // namespace padyn
