#pragma once

#include <spav/election.hh>

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace spav
{
    enum class Goal
    {
        constructive,
        destructive
    };

    /// Ties-eliminate promotes a subelection winner only when unique; ties-promote
    /// promotes every winner.
    enum class TieRule
    {
        eliminate,
        promote
    };

    enum class Action
    {
        add_candidates_unlimited,
        add_candidates_limited,
        delete_candidates,
        partition_candidates,
        runoff_partition_candidates,
        add_voters,
        delete_voters,
        partition_voters
    };

    auto is_partition(Action) -> bool;
    auto is_candidate_control(Action) -> bool;
    auto has_limit(Action) -> bool;

    struct ControlType
    {
        Goal goal;
        Action action;
        std::optional<TieRule> tie_rule;

        auto operator==(const ControlType &) const -> bool = default;
    };

    /// The 22 control types: goal-major, actions in declaration order, TE before TP.
    auto all_control_types() -> std::vector<ControlType>;

    /// Action token used in files and on the command line, e.g. "partition-voters-te".
    auto action_name(Action, std::optional<TieRule>) -> std::string;
    auto goal_name(Goal) -> std::string;
    auto type_name(const ControlType &) -> std::string;

    auto parse_goal(std::string_view) -> Goal;
    /// Parses an action token, returning the action and, for partitions, its tie rule.
    auto parse_action(std::string_view) -> std::pair<Action, std::optional<TieRule>>;
    /// Parses "[constructive-|destructive-]<action>", defaulting to constructive.
    auto parse_control_type(std::string_view) -> ControlType;

    /// A control problem. For adding candidates `election` ranks C ∪ D and
    /// `spoilers` lists D; otherwise `spoilers` is empty and `election` is (C, V).
    /// `pool` holds the additional voters W (ballots over C) for adding voters.
    struct ControlInstance
    {
        Election election;
        CandidateId goal_candidate;
        ControlType type;
        std::size_t limit = 0;
        std::vector<CandidateId> spoilers;
        std::vector<Ballot> pool;

        /// C, in canonical order.
        auto qualified() const -> std::vector<CandidateId>;

        /// Throws naming the first violated invariant.
        auto validate() const -> void;
    };

    /// Spoilers added (adding candidates).
    struct CandidateSubset
    {
        std::vector<CandidateId> members;
        auto operator==(const CandidateSubset &) const -> bool = default;
    };

    struct DeletedCandidates
    {
        std::vector<CandidateId> members;
        auto operator==(const DeletedCandidates &) const -> bool = default;
    };

    /// Zero-based indices into the instance's pool.
    struct VoterSubset
    {
        std::vector<std::size_t> members;
        auto operator==(const VoterSubset &) const -> bool = default;
    };

    /// Zero-based indices into the election's ballots.
    struct DeletedVoters
    {
        std::vector<std::size_t> members;
        auto operator==(const DeletedVoters &) const -> bool = default;
    };

    struct CandidateBipartition
    {
        std::vector<CandidateId> first, second;
        auto operator==(const CandidateBipartition &) const -> bool = default;
    };

    struct VoterBipartition
    {
        std::vector<std::size_t> first, second;
        auto operator==(const VoterBipartition &) const -> bool = default;
    };

    using Witness = std::variant<CandidateSubset, DeletedCandidates, VoterSubset, DeletedVoters, CandidateBipartition,
        VoterBipartition>;

    /// Throws naming the violated constraint when `w` is not a legal chair action for `instance`.
    auto validate_witness(const ControlInstance & instance, const Witness & w) -> void;

    /// The election of the final stage, or nothing when no candidate reaches it.
    auto final_election(const ControlInstance & instance, const Witness & w) -> std::optional<Election>;

    /// Winners of the final stage (empty if the final stage has no candidates).
    auto final_winners(const ControlInstance & instance, const Witness & w) -> std::vector<CandidateId>;

    /// Unique-winner model: constructive succeeds iff the final winners are exactly
    /// {goal}; destructive succeeds otherwise.
    auto check_witness(const ControlInstance & instance, const Witness & w) -> bool;

    /// Survivors of a first-stage subelection under the tie rule.
    auto promoted(const std::vector<CandidateId> & subelection_winners, TieRule rule) -> std::vector<CandidateId>;
}
