#pragma once

// Helpers shared by the unit and acceptance tests: random elections and an
// independent, deliberately naive evaluator used as a second opinion.

#include <spav/control.hh>
#include <spav/election.hh>

#include <map>
#include <random>
#include <string>
#include <vector>

namespace spav::test
{
    auto election_from(std::string_view text) -> Election;

    auto letters(std::size_t n) -> std::vector<CandidateId>;

    /// A uniformly random ranking of `roster`. Admissible ballots approve 1..n-1
    /// candidates; otherwise 0..n.
    auto random_ballot(std::mt19937_64 & rng, const std::vector<CandidateId> & roster, bool admissible) -> Ballot;

    /// Up to `max_types` distinct random admissible ballots, each repeated 1..max_multiplicity times.
    auto random_election(std::mt19937_64 & rng, std::size_t num_candidates, std::size_t max_types,
        long max_multiplicity) -> Election;

    /// A small random instance of `type` (at most 4 qualified candidates, 2 spoilers, 6 voters, 4 pool voters).
    auto random_instance(std::mt19937_64 & rng, const ControlType & type) -> ControlInstance;

    // Naive evaluation over plain strings, sharing no code with the library.
    namespace naive
    {
        struct Vote
        {
            std::vector<std::string> ranking;
            std::size_t approvals;
        };

        auto votes_of(const std::vector<Ballot> & ballots) -> std::vector<Vote>;
        auto scores(const std::vector<std::string> & candidates, const std::vector<Vote> & votes)
            -> std::map<std::string, long>;
        auto winners(const std::vector<std::string> & candidates, const std::vector<Vote> & votes)
            -> std::vector<std::string>;
        /// Exhaustive decision over every witness, voter by voter.
        auto possible(const ControlInstance & instance) -> bool;
    }
}
