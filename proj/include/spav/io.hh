#pragma once

#include <spav/control.hh>
#include <spav/election.hh>
#include <spav/reductions.hh>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spav
{
    /// One non-blank, comment-stripped input line split as `key [modifier]: value...`.
    struct Record
    {
        std::size_t line = 0;
        std::string key;
        std::string modifier;
        std::vector<std::string> values;
    };

    /// Splits text into records. `|` is always its own token. Lines without a colon
    /// are kept with an empty key only when they are section markers (`[...]` or `---`).
    auto tokenize(std::string_view text) -> std::vector<Record>;

    struct ParsedElection
    {
        Election election;
        /// One entry per inadmissible ballot left as is (no rewriting requested).
        std::vector<std::string> warnings;
    };

    /// Election text: `candidates: <id>...` then `vote [x<N>]: <ranking with one |>` lines.
    /// With `rewrite`, inadmissible ballots are rewritten on load instead of reported.
    auto parse_election(std::string_view text, bool rewrite = false) -> ParsedElection;

    /// Control-instance text: the election lines plus `control:`, `goal:`, `limit:`,
    /// `spoilers:` and `pool-vote [x<N>]:` lines.
    auto parse_instance(std::string_view text) -> ControlInstance;

    /// Witness text for an instance: `add:`/`keep:`, `delete:`, or `partition-1:` and `partition-2:`.
    /// Voters are written `v<i>` (election) or `p<i>` (pool), one-based.
    auto parse_witness(std::string_view text, const ControlInstance & instance) -> Witness;

    auto parse_hitting_set(std::string_view text) -> HittingSetInstance;
    auto parse_x3c(std::string_view text) -> X3CInstance;

    auto format_ballot(const Ballot & b) -> std::string;
    /// Runs of identical consecutive ballots are written with an `x<N>` multiplicity.
    auto format_election(const Election & e) -> std::string;
    auto format_instance(const ControlInstance & instance) -> std::string;
    auto format_witness(const Witness & w) -> std::string;
    auto format_hitting_set(const HittingSetInstance & h) -> std::string;
    auto format_x3c(const X3CInstance & x) -> std::string;

    auto join(const std::vector<CandidateId> & ids, std::string_view separator = " ") -> std::string;

    auto read_file(const std::filesystem::path & path) -> std::string;

    namespace detail
    {
        auto parse_ballot(const Record & r, const std::vector<CandidateId> & roster) -> Ballot;
        auto parse_count(const Record & r, std::string_view token) -> long;
        auto multiplicity(const Record & r) -> long;
    }
}
