#pragma once

#include <spav/control.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spav
{
    enum class Method
    {
        brute_force,
        polynomial
    };

    auto method_name(Method) -> std::string;

    struct SearchStats
    {
        /// Candidate witnesses evaluated (brute force) or loop iterations (polynomial).
        std::uint64_t nodes = 0;
        /// Ballot-type evaluations performed.
        std::uint64_t work = 0;
    };

    struct Decision
    {
        std::optional<Witness> witness;
        Method method = Method::brute_force;
        SearchStats stats;

        auto possible() const -> bool { return witness.has_value(); }
    };

    inline constexpr std::uint64_t default_budget = 50'000'000;

    /// Exhaustive search over the chair's actions in canonical order: by size, then
    /// lexicographically over the canonical candidate order or over ballot types.
    /// Voter actions choose how many voters of each distinct ballot type to take;
    /// voter bipartitions additionally skip the mirror image of each partition
    /// (keeping the one whose count vector is lexicographically larger), since
    /// swapping the two halves never changes the outcome. Returns the first
    /// successful witness or "impossible"; throws BudgetExceeded when more than
    /// `budget` witnesses would need to be examined.
    auto decide_brute(const ControlInstance & instance, std::uint64_t budget = default_budget) -> Decision;

    /// Destructive control by adding voters, polynomial time.
    auto decide_destructive_add_voters(const ControlInstance & instance) -> Decision;

    /// Destructive control by deleting voters, polynomial time.
    auto decide_destructive_delete_voters(const ControlInstance & instance) -> Decision;

    /// Destructive control by partition of voters under ties-eliminate, polynomial time.
    auto decide_destructive_pv_te(const ControlInstance & instance) -> Decision;

    /// Voter counts for one ordered pair of rivals (a, b) against the goal candidate c.
    struct LoopCounters
    {
        long c_wins = 0;        ///< approve c, neither a nor b
        long c_loses = 0;       ///< approve a and b, not c
        long a_gains = 0;       ///< approve a only
        long b_gains = 0;       ///< approve b only
        long a_and_c_gain = 0;  ///< approve a and c, not b

        /// a and b can keep c from being a unique subelection winner in both halves.
        auto splittable() const -> bool { return c_wins - c_loses <= a_gains + b_gains; }
    };

    auto loop_counters(const Election & election, const CandidateId & a, const CandidateId & b, const CandidateId & c)
        -> LoopCounters;

    /// Candidates y != c with preference_margin(y, c) >= 0, in canonical order.
    auto rival_set(const Election & election, const CandidateId & c) -> std::vector<CandidateId>;

    enum class Complexity
    {
        resistant,
        vulnerable
    };

    auto complexity_name(Complexity) -> std::string;
    auto classification(const ControlType & type) -> Complexity;

    /// The polynomial decider for `type`, if one exists.
    auto has_polynomial_decider(const ControlType & type) -> bool;
    auto decide_polynomial(const ControlInstance & instance) -> Decision;
}
