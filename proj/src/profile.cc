#include <spav/error.hh>
#include <spav/profile.hh>

#include <array>
#include <map>

using std::size_t;
using std::span;
using std::vector;

namespace spav
{
    Profile::Profile(const Election & roster_source, span<const Ballot> ballots) :
        _num_candidates(roster_source.num_candidates())
    {
        if (_num_candidates > max_profile_candidates)
            throw Error("at most " + std::to_string(max_profile_candidates) + " candidates are supported by the evaluator");

        std::map<std::pair<vector<std::uint8_t>, size_t>, size_t> seen;
        for (size_t v = 0; v < ballots.size(); ++v) {
            auto & b = ballots[v];
            if (b.ranking.size() != _num_candidates)
                throw Error("ballot " + std::to_string(v + 1) + " does not rank every candidate exactly once");

            BallotType t;
            t.approval_count = b.approval_count;
            for (size_t p = 0; p < b.ranking.size(); ++p) {
                auto i = roster_source.index_of(b.ranking[p]);
                t.ranking.push_back(std::uint8_t(i));
                if (p < b.approval_count)
                    t.approved |= CandidateMask{1} << i;
            }

            auto [it, inserted] = seen.emplace(std::pair{t.ranking, t.approval_count}, _types.size());
            if (inserted) {
                _types.push_back(std::move(t));
                _multiplicity.push_back(0);
                _members.emplace_back();
            }
            ++_multiplicity[it->second];
            _members[it->second].push_back(v);
        }
    }

    auto full_mask(size_t num_candidates) -> CandidateMask
    {
        return num_candidates >= 64 ? ~CandidateMask{0} : (CandidateMask{1} << num_candidates) - 1;
    }

    auto mask_of(const Election & election, span<const CandidateId> members) -> CandidateMask
    {
        CandidateMask m = 0;
        for (auto & c : members)
            m |= CandidateMask{1} << election.index_of(c);
        return m;
    }

    auto members_of(const Election & election, CandidateMask mask) -> vector<CandidateId>
    {
        vector<CandidateId> result;
        for (size_t i = 0; i < election.num_candidates(); ++i)
            if (mask & (CandidateMask{1} << i))
                result.push_back(election.candidates()[i]);
        return result;
    }

    auto restricted_scores(span<const BallotType> types, span<const long> weights, CandidateMask keep, span<long> out) -> void
    {
        std::fill(out.begin(), out.end(), 0);
        auto kept = size_t(mask_size(keep));
        if (kept == 0)
            return;

        for (size_t t = 0; t < types.size(); ++t) {
            if (weights[t] == 0)
                continue;
            auto & type = types[t];
            auto line = size_t(mask_size(type.approved & keep));
            if (kept >= 2) {
                if (line == 0)
                    line = 1;
                else if (line == kept)
                    line = kept - 1;
            }
            for (auto c : type.ranking) {
                if (line == 0)
                    break;
                if (keep & (CandidateMask{1} << c)) {
                    out[c] += weights[t];
                    --line;
                }
            }
        }
    }

    auto top_scorers(span<const long> scores, CandidateMask keep) -> CandidateMask
    {
        CandidateMask result = 0;
        long best = -1;
        for (size_t i = 0; i < scores.size(); ++i) {
            auto bit = CandidateMask{1} << i;
            if (! (keep & bit))
                continue;
            if (scores[i] > best) {
                best = scores[i];
                result = bit;
            }
            else if (scores[i] == best)
                result |= bit;
        }
        return result;
    }

    auto restricted_winners(span<const BallotType> types, span<const long> weights, CandidateMask keep) -> CandidateMask
    {
        std::array<long, max_profile_candidates> scores{};
        auto n = types.empty() ? size_t(64) : types.front().ranking.size();
        restricted_scores(types, weights, keep, span{scores}.first(n));
        return top_scorers(span{scores}.first(n), keep);
    }
}
