#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spav
{
    /// Symbolic candidate label. Equality is label equality.
    class CandidateId
    {
    public:
        explicit CandidateId(std::string label);

        auto label() const -> const std::string & { return _label; }

        auto operator==(const CandidateId &) const -> bool = default;
        auto operator<=>(const CandidateId &) const = default;

    private:
        std::string _label;
    };

    auto operator<<(std::ostream &, const CandidateId &) -> std::ostream &;

    /// Convenience for building id lists in code and tests: ids({"a", "b"}).
    auto ids(std::initializer_list<const char *> labels) -> std::vector<CandidateId>;

    /// A sincere SP-AV ballot: a tie-free ranking plus an approval line after the
    /// first `approval_count` entries. Gaps in the approval set cannot be expressed.
    struct Ballot
    {
        std::vector<CandidateId> ranking;
        std::size_t approval_count = 0;

        auto approved() const -> std::span<const CandidateId>;
        auto approves(const CandidateId &) const -> bool;

        /// Approves the top candidate and disapproves the bottom one. Ballots over
        /// a single candidate are never rewritten and count as admissible.
        auto admissible() const -> bool;

        auto operator==(const Ballot &) const -> bool = default;
    };

    /// Applies the rewrite rule: with at least two candidates, an empty approval set
    /// becomes {top} and a full one loses only the bottom candidate. Everything
    /// else, including every single-candidate ballot, is returned unchanged.
    auto rewrite_ballot(const Ballot & ballot, std::size_t num_candidates) -> Ballot;

    /// A roster of candidates in canonical order together with a multiset of
    /// ballots, each ranking exactly the roster's candidates.
    class Election
    {
    public:
        Election(std::vector<CandidateId> roster, std::vector<Ballot> ballots);

        auto candidates() const -> const std::vector<CandidateId> & { return _roster; }
        auto ballots() const -> const std::vector<Ballot> & { return _ballots; }

        auto num_candidates() const -> std::size_t { return _roster.size(); }
        auto num_voters() const -> std::size_t { return _ballots.size(); }

        auto contains(const CandidateId &) const -> bool;

        /// Position of a candidate in the canonical order; throws for unknown ids.
        auto index_of(const CandidateId &) const -> std::size_t;

        /// The same election with a different collection of ballots over the same roster.
        auto with_ballots(std::vector<Ballot> ballots) const -> Election;

        auto operator==(const Election &) const -> bool = default;

    private:
        std::vector<CandidateId> _roster;
        std::vector<Ballot> _ballots;
    };

    /// Approval counts listed in the election's canonical order.
    class ScoreTable
    {
    public:
        ScoreTable() = default;
        explicit ScoreTable(std::vector<std::pair<CandidateId, long>> entries);

        auto entries() const -> const std::vector<std::pair<CandidateId, long>> & { return _entries; }
        auto score(const CandidateId &) const -> long;
        auto total() const -> long;

    private:
        std::vector<std::pair<CandidateId, long>> _entries;
    };

    /// Restricts every ballot to `keep` (relative order preserved), keeps the surviving
    /// approvals, then applies the rewrite rule for the reduced candidate count.
    auto restrict_election(const Election & election, std::span<const CandidateId> keep) -> Election;

    /// Restriction to the full roster: applies the rewrite rule to every ballot.
    auto normalize(const Election & election) -> Election;

    auto score_table(const Election & election) -> ScoreTable;

    /// All candidates of maximum score, in canonical order.
    auto winners(const Election & election) -> std::vector<CandidateId>;
    auto unique_winner(const Election & election) -> std::optional<CandidateId>;

    /// Voters ranking x above y minus voters ranking y above x.
    auto preference_margin(const Election & election, const CandidateId & x, const CandidateId & y) -> long;
}
