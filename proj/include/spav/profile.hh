#pragma once

#include <spav/election.hh>

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace spav
{
    /// Bit i set means roster position i is present.
    using CandidateMask = std::uint64_t;

    inline constexpr std::size_t max_profile_candidates = 64;

    inline auto mask_size(CandidateMask m) -> int { return std::popcount(m); }

    struct BallotType
    {
        std::vector<std::uint8_t> ranking;
        std::size_t approval_count = 0;
        CandidateMask approved = 0;
    };

    /// Distinct ballots of a collection with multiplicities, in order of first
    /// appearance. Rankings are stored as roster positions of the source election.
    /// Identical ballots are interchangeable for every control outcome, so the
    /// exhaustive deciders enumerate over these types instead of individual voters.
    class Profile
    {
    public:
        Profile(const Election & roster_source, std::span<const Ballot> ballots);

        auto num_candidates() const -> std::size_t { return _num_candidates; }
        auto types() const -> const std::vector<BallotType> & { return _types; }
        auto multiplicities() const -> const std::vector<long> & { return _multiplicity; }

        /// Indices into the source ballot list, ascending, for each type.
        auto members(std::size_t type) const -> const std::vector<std::size_t> & { return _members[type]; }

    private:
        std::size_t _num_candidates;
        std::vector<BallotType> _types;
        std::vector<long> _multiplicity;
        std::vector<std::vector<std::size_t>> _members;
    };

    auto full_mask(std::size_t num_candidates) -> CandidateMask;
    auto mask_of(const Election & election, std::span<const CandidateId> members) -> CandidateMask;
    auto members_of(const Election & election, CandidateMask mask) -> std::vector<CandidateId>;

    /// Scores of the election restricted to `keep` (rewrite rule applied for the
    /// reduced candidate set), with type t counted weights[t] times. `out` is indexed
    /// by roster position; entries outside `keep` are zero.
    auto restricted_scores(std::span<const BallotType> types, std::span<const long> weights,
        CandidateMask keep, std::span<long> out) -> void;

    /// Members of `keep` with maximum score. Empty when `keep` is empty.
    auto top_scorers(std::span<const long> scores, CandidateMask keep) -> CandidateMask;

    /// Winner set of the restricted, weighted election.
    auto restricted_winners(std::span<const BallotType> types, std::span<const long> weights, CandidateMask keep) -> CandidateMask;
}
