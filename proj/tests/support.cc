#include "support.hh"

#include <spav/io.hh>

#include <algorithm>
#include <set>

using std::size_t;
using std::string;
using std::vector;

namespace spav::test
{
    auto election_from(std::string_view text) -> Election
    {
        return parse_election(text).election;
    }

    auto letters(size_t n) -> vector<CandidateId>
    {
        vector<CandidateId> out;
        for (size_t i = 0; i < n; ++i)
            out.emplace_back(string(1, char('a' + i)));
        return out;
    }

    auto random_ballot(std::mt19937_64 & rng, const vector<CandidateId> & roster, bool admissible) -> Ballot
    {
        Ballot b{roster, 0};
        std::shuffle(b.ranking.begin(), b.ranking.end(), rng);
        auto n = roster.size();
        if (admissible && n >= 2)
            b.approval_count = std::uniform_int_distribution<size_t>(1, n - 1)(rng);
        else
            b.approval_count = std::uniform_int_distribution<size_t>(0, n)(rng);
        return b;
    }

    auto random_election(std::mt19937_64 & rng, size_t num_candidates, size_t max_types, long max_multiplicity) -> Election
    {
        auto roster = letters(num_candidates);
        auto types = std::uniform_int_distribution<size_t>(1, max_types)(rng);
        vector<Ballot> ballots;
        for (size_t t = 0; t < types; ++t) {
            auto b = random_ballot(rng, roster, true);
            auto k = std::uniform_int_distribution<long>(1, max_multiplicity)(rng);
            for (long i = 0; i < k; ++i)
                ballots.push_back(b);
        }
        return Election(roster, ballots);
    }

    auto random_instance(std::mt19937_64 & rng, const ControlType & type) -> ControlInstance
    {
        auto pick = [&](size_t lo, size_t hi) { return std::uniform_int_distribution<size_t>(lo, hi)(rng); };
        bool adding = type.action == Action::add_candidates_limited || type.action == Action::add_candidates_unlimited;

        auto qualified = pick(1, 4);
        auto spoilers = adding ? pick(1, 2) : 0;
        auto roster = letters(qualified + spoilers);
        auto voters = pick(type.action == Action::add_voters ? 0 : 1, 6);

        vector<Ballot> ballots;
        for (size_t i = 0; i < voters; ++i)
            ballots.push_back(random_ballot(rng, roster, true));
        ControlInstance instance{Election(roster, ballots), roster[pick(0, qualified - 1)], type, pick(0, 3), {}, {}};
        instance.spoilers.assign(roster.begin() + long(qualified), roster.end());
        if (type.action == Action::add_voters) {
            vector<CandidateId> c(roster.begin(), roster.begin() + long(qualified));
            auto pool = pick(1, 4);
            for (size_t i = 0; i < pool; ++i)
                instance.pool.push_back(random_ballot(rng, c, true));
        }
        if (! has_limit(type.action))
            instance.limit = 0;
        instance.validate();
        return instance;
    }

    namespace naive
    {
        using Names = vector<string>;

        auto votes_of(const vector<Ballot> & ballots) -> vector<Vote>
        {
            vector<Vote> out;
            for (auto & b : ballots) {
                Vote v{{}, b.approval_count};
                for (auto & c : b.ranking)
                    v.ranking.push_back(c.label());
                out.push_back(v);
            }
            return out;
        }

        auto scores(const Names & candidates, const vector<Vote> & votes) -> std::map<string, long>
        {
            std::map<string, long> s;
            for (auto & c : candidates)
                s[c] = 0;
            std::set<string> keep(candidates.begin(), candidates.end());
            for (auto & v : votes) {
                Names kept;
                size_t approved = 0;
                for (size_t i = 0; i < v.ranking.size(); ++i)
                    if (keep.count(v.ranking[i])) {
                        kept.push_back(v.ranking[i]);
                        approved += i < v.approvals;
                    }
                if (kept.size() >= 2) {
                    if (approved == 0)
                        approved = 1;
                    if (approved == kept.size())
                        approved = kept.size() - 1;
                }
                for (size_t i = 0; i < approved; ++i)
                    ++s[kept[i]];
            }
            return s;
        }

        auto winners(const Names & candidates, const vector<Vote> & votes) -> Names
        {
            if (candidates.empty())
                return {};
            auto s = scores(candidates, votes);
            long best = -1;
            for (auto & [c, x] : s)
                best = std::max(best, x);
            Names out;
            for (auto & [c, x] : s)
                if (x == best)
                    out.push_back(c);
            return out;
        }

        namespace
        {
            auto promote(const Names & w, std::optional<TieRule> rule) -> Names
            {
                if (rule == TieRule::promote || w.size() == 1)
                    return w;
                return {};
            }

            template <typename T_>
            auto pick(const vector<T_> & items, unsigned mask) -> vector<T_>
            {
                vector<T_> out;
                for (size_t i = 0; i < items.size(); ++i)
                    if (mask >> i & 1u)
                        out.push_back(items[i]);
                return out;
            }

            auto unite(Names a, const Names & b) -> Names
            {
                a.insert(a.end(), b.begin(), b.end());
                std::sort(a.begin(), a.end());
                a.erase(std::unique(a.begin(), a.end()), a.end());
                return a;
            }
        }

        auto possible(const ControlInstance & instance) -> bool
        {
            Names all, c, d;
            for (auto & x : instance.election.candidates())
                all.push_back(x.label());
            for (auto & x : instance.spoilers)
                d.push_back(x.label());
            for (auto & x : all)
                if (std::find(d.begin(), d.end(), x) == d.end())
                    c.push_back(x);
            auto v = votes_of(instance.election.ballots());
            auto pool = votes_of(instance.pool);
            string goal = instance.goal_candidate.label();
            auto type = instance.type;
            auto limit = instance.limit;

            auto success = [&](const Names & w) {
                bool unique = w.size() == 1 && w.front() == goal;
                return type.goal == Goal::constructive ? unique : ! unique;
            };

            switch (type.action) {
            case Action::add_candidates_unlimited:
            case Action::add_candidates_limited:
                for (unsigned m = 0; m < 1u << d.size(); ++m) {
                    auto added = pick(d, m);
                    if (type.action == Action::add_candidates_limited && added.size() > limit)
                        continue;
                    if (success(winners(unite(c, added), v)))
                        return true;
                }
                return false;
            case Action::delete_candidates:
                for (unsigned m = 0; m < 1u << c.size(); ++m) {
                    auto deleted = pick(c, m);
                    if (deleted.size() > limit)
                        continue;
                    if (type.goal == Goal::destructive && std::find(deleted.begin(), deleted.end(), goal) != deleted.end())
                        continue;
                    if (success(winners(pick(c, ~m), v)))
                        return true;
                }
                return false;
            case Action::partition_candidates:
            case Action::runoff_partition_candidates:
                for (unsigned m = 0; m < 1u << c.size(); ++m) {
                    auto c1 = pick(c, m), c2 = pick(c, ~m);
                    auto p1 = promote(winners(c1, v), type.tie_rule);
                    auto second = type.action == Action::partition_candidates ? c2 : promote(winners(c2, v), type.tie_rule);
                    if (success(winners(unite(p1, second), v)))
                        return true;
                }
                return false;
            case Action::add_voters:
                for (unsigned m = 0; m < 1u << pool.size(); ++m) {
                    auto added = pick(pool, m);
                    if (added.size() > limit)
                        continue;
                    auto all_votes = v;
                    all_votes.insert(all_votes.end(), added.begin(), added.end());
                    if (success(winners(c, all_votes)))
                        return true;
                }
                return false;
            case Action::delete_voters:
                for (unsigned m = 0; m < 1u << v.size(); ++m) {
                    if (size_t(std::popcount(m)) > limit)
                        continue;
                    if (success(winners(c, pick(v, ~m))))
                        return true;
                }
                return false;
            case Action::partition_voters:
                for (unsigned m = 0; m < 1u << v.size(); ++m) {
                    auto p1 = promote(winners(c, pick(v, m)), type.tie_rule);
                    auto p2 = promote(winners(c, pick(v, ~m)), type.tie_rule);
                    if (success(winners(unite(p1, p2), v)))
                        return true;
                }
                return false;
            }
            return false;
        }
    }
}
