#include <spav/election.hh>
#include <spav/error.hh>

#include <algorithm>
#include <ostream>
#include <unordered_map>

using std::optional;
using std::size_t;
using std::span;
using std::string;
using std::vector;

namespace spav
{
    CandidateId::CandidateId(string label) :
        _label(std::move(label))
    {
        if (_label.empty())
            throw Error("candidate label must be nonempty");
    }

    auto operator<<(std::ostream & s, const CandidateId & c) -> std::ostream &
    {
        return s << c.label();
    }

    auto ids(std::initializer_list<const char *> labels) -> vector<CandidateId>
    {
        vector<CandidateId> result;
        for (auto l : labels)
            result.emplace_back(l);
        return result;
    }

    auto Ballot::approved() const -> span<const CandidateId>
    {
        return span{ranking}.first(approval_count);
    }

    auto Ballot::approves(const CandidateId & c) const -> bool
    {
        auto a = approved();
        return std::find(a.begin(), a.end(), c) != a.end();
    }

    auto Ballot::admissible() const -> bool
    {
        if (ranking.size() < 2)
            return approval_count <= ranking.size();
        return approval_count >= 1 && approval_count + 1 <= ranking.size();
    }

    auto rewrite_ballot(const Ballot & ballot, size_t num_candidates) -> Ballot
    {
        if (num_candidates != ballot.ranking.size())
            throw Error("ballot ranks " + std::to_string(ballot.ranking.size()) + " candidates, expected " + std::to_string(num_candidates));
        if (ballot.approval_count > num_candidates)
            throw Error("approval count exceeds ranking length");

        Ballot result = ballot;
        if (num_candidates >= 2) {
            if (result.approval_count == 0)
                result.approval_count = 1;
            else if (result.approval_count == num_candidates)
                result.approval_count = num_candidates - 1;
        }
        return result;
    }

    Election::Election(vector<CandidateId> roster, vector<Ballot> ballots) :
        _roster(std::move(roster)),
        _ballots(std::move(ballots))
    {
        if (_roster.empty())
            throw Error("empty candidate set");

        std::unordered_map<string, size_t> position;
        for (size_t i = 0; i < _roster.size(); ++i)
            if (! position.emplace(_roster[i].label(), i).second)
                throw Error("duplicate candidate '" + _roster[i].label() + "'");

        for (size_t v = 0; v < _ballots.size(); ++v) {
            auto & b = _ballots[v];
            if (b.ranking.size() != _roster.size())
                throw Error("ballot " + std::to_string(v + 1) + " does not rank every candidate exactly once");
            vector<bool> seen(_roster.size(), false);
            for (auto & c : b.ranking) {
                auto p = position.find(c.label());
                if (p == position.end())
                    throw Error("ballot " + std::to_string(v + 1) + " ranks unknown candidate '" + c.label() + "'");
                if (seen[p->second])
                    throw Error("ballot " + std::to_string(v + 1) + " ranks '" + c.label() + "' twice");
                seen[p->second] = true;
            }
            if (b.approval_count > b.ranking.size())
                throw Error("ballot " + std::to_string(v + 1) + " approves more candidates than it ranks");
        }
    }

    auto Election::contains(const CandidateId & c) const -> bool
    {
        return std::find(_roster.begin(), _roster.end(), c) != _roster.end();
    }

    auto Election::index_of(const CandidateId & c) const -> size_t
    {
        auto it = std::find(_roster.begin(), _roster.end(), c);
        if (it == _roster.end())
            throw Error("unknown candidate '" + c.label() + "'");
        return size_t(it - _roster.begin());
    }

    auto Election::with_ballots(vector<Ballot> ballots) const -> Election
    {
        return Election{_roster, std::move(ballots)};
    }

    ScoreTable::ScoreTable(vector<std::pair<CandidateId, long>> entries) :
        _entries(std::move(entries))
    {
    }

    auto ScoreTable::score(const CandidateId & c) const -> long
    {
        for (auto & [id, s] : _entries)
            if (id == c)
                return s;
        throw Error("unknown candidate '" + c.label() + "'");
    }

    auto ScoreTable::total() const -> long
    {
        long t = 0;
        for (auto & e : _entries)
            t += e.second;
        return t;
    }

    auto restrict_election(const Election & election, span<const CandidateId> keep) -> Election
    {
        if (keep.empty())
            throw Error("empty candidate set");

        vector<bool> kept(election.num_candidates(), false);
        for (auto & c : keep)
            kept[election.index_of(c)] = true;

        vector<CandidateId> roster;
        for (size_t i = 0; i < election.num_candidates(); ++i)
            if (kept[i])
                roster.push_back(election.candidates()[i]);

        vector<Ballot> ballots;
        ballots.reserve(election.num_voters());
        for (auto & b : election.ballots()) {
            Ballot r;
            for (size_t p = 0; p < b.ranking.size(); ++p) {
                if (kept[election.index_of(b.ranking[p])]) {
                    r.ranking.push_back(b.ranking[p]);
                    if (p < b.approval_count)
                        ++r.approval_count;
                }
            }
            ballots.push_back(rewrite_ballot(r, roster.size()));
        }

        return Election{std::move(roster), std::move(ballots)};
    }

    auto normalize(const Election & election) -> Election
    {
        return restrict_election(election, election.candidates());
    }

    auto score_table(const Election & election) -> ScoreTable
    {
        vector<long> score(election.num_candidates(), 0);
        for (auto & b : election.ballots())
            for (auto & c : b.approved())
                ++score[election.index_of(c)];

        vector<std::pair<CandidateId, long>> entries;
        for (size_t i = 0; i < election.num_candidates(); ++i)
            entries.emplace_back(election.candidates()[i], score[i]);
        return ScoreTable{std::move(entries)};
    }

    auto winners(const Election & election) -> vector<CandidateId>
    {
        auto table = score_table(election);
        long best = 0;
        for (auto & e : table.entries())
            best = std::max(best, e.second);

        vector<CandidateId> result;
        for (auto & e : table.entries())
            if (e.second == best)
                result.push_back(e.first);
        return result;
    }

    auto unique_winner(const Election & election) -> optional<CandidateId>
    {
        auto w = winners(election);
        if (w.size() == 1)
            return w.front();
        return std::nullopt;
    }

    auto preference_margin(const Election & election, const CandidateId & x, const CandidateId & y) -> long
    {
        if (x == y)
            throw Error("preference margin needs two distinct candidates, got '" + x.label() + "' twice");
        election.index_of(x);
        election.index_of(y);

        long margin = 0;
        for (auto & b : election.ballots()) {
            for (auto & c : b.ranking) {
                if (c == x) {
                    ++margin;
                    break;
                }
                if (c == y) {
                    --margin;
                    break;
                }
            }
        }
        return margin;
    }
}
