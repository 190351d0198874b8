#include <spav/enumerate.hh>
#include <spav/error.hh>
#include <spav/profile.hh>
#include <spav/solvers.hh>

#include <algorithm>
#include <array>
#include <numeric>

using std::nullopt;
using std::optional;
using std::size_t;
using std::span;
using std::string;
using std::vector;

namespace spav
{
    auto method_name(Method m) -> string
    {
        return m == Method::brute_force ? "brute-force" : "polynomial";
    }

    auto complexity_name(Complexity c) -> string
    {
        return c == Complexity::resistant ? "resistant" : "vulnerable";
    }

    auto classification(const ControlType & type) -> Complexity
    {
        return has_polynomial_decider(type) ? Complexity::vulnerable : Complexity::resistant;
    }

    auto has_polynomial_decider(const ControlType & type) -> bool
    {
        if (type.goal != Goal::destructive)
            return false;
        return type.action == Action::add_voters || type.action == Action::delete_voters
            || (type.action == Action::partition_voters && type.tie_rule == TieRule::eliminate);
    }

    namespace
    {
        using Scores = std::array<long, max_profile_candidates>;

        auto bit(size_t i) -> CandidateMask { return CandidateMask{1} << i; }

        auto take_members(const Profile & profile, const vector<long> & counts) -> vector<size_t>
        {
            vector<size_t> result;
            for (size_t t = 0; t < counts.size(); ++t) {
                auto & m = profile.members(t);
                result.insert(result.end(), m.begin(), m.begin() + counts[t]);
            }
            std::sort(result.begin(), result.end());
            return result;
        }

        auto complement_indices(const vector<size_t> & chosen, size_t n) -> vector<size_t>
        {
            vector<bool> in(n, false);
            for (auto i : chosen)
                in[i] = true;
            vector<size_t> rest;
            for (size_t i = 0; i < n; ++i)
                if (! in[i])
                    rest.push_back(i);
            return rest;
        }

        class BruteSearch
        {
        public:
            BruteSearch(const ControlInstance & instance, std::uint64_t budget) :
                _instance(instance),
                _election(instance.election),
                _budget(budget),
                _voters(instance.election, instance.election.ballots()),
                _full(full_mask(instance.election.num_candidates())),
                _goal(bit(instance.election.index_of(instance.goal_candidate)))
            {
                _types = _voters.types();
                _weights = _voters.multiplicities();
            }

            auto run() -> Decision
            {
                Decision d;
                d.method = Method::brute_force;
                d.witness = search();
                d.stats = _stats;
                return d;
            }

        private:
            const ControlInstance & _instance;
            const Election & _election;
            std::uint64_t _budget;
            Profile _voters;
            CandidateMask _full;
            CandidateMask _goal;
            vector<BallotType> _types;
            vector<long> _weights;
            SearchStats _stats;

            auto clamped_limit() const -> long
            {
                return long(std::min<std::size_t>(_instance.limit, std::size_t{1} << 40));
            }

            auto tick() -> void
            {
                if (++_stats.nodes > _budget)
                    throw BudgetExceeded(_budget);
            }

            auto succeeded(CandidateMask final_winners) const -> bool
            {
                bool unique = final_winners == _goal;
                return _instance.type.goal == Goal::constructive ? unique : ! unique;
            }

            auto winners_of(span<const long> weights, CandidateMask keep) -> CandidateMask
            {
                _stats.work += _types.size();
                return restricted_winners(_types, weights, keep);
            }

            auto stage(span<const long> weights, CandidateMask keep) -> CandidateMask
            {
                if (keep == 0)
                    return 0;
                auto w = winners_of(weights, keep);
                if (*_instance.type.tie_rule == TieRule::eliminate && mask_size(w) != 1)
                    return 0;
                return w;
            }

            auto final_of(span<const long> weights, CandidateMask keep) -> CandidateMask
            {
                return keep == 0 ? 0 : winners_of(weights, keep);
            }

            auto positions(CandidateMask m) const -> vector<size_t>
            {
                vector<size_t> result;
                for (size_t i = 0; i < _election.num_candidates(); ++i)
                    if (m & bit(i))
                        result.push_back(i);
                return result;
            }

            auto ids_at(const vector<size_t> & pos) const -> vector<CandidateId>
            {
                vector<CandidateId> result;
                for (auto p : pos)
                    result.push_back(_election.candidates()[p]);
                return result;
            }

            auto mask_at(const vector<size_t> & pos) const -> CandidateMask
            {
                CandidateMask m = 0;
                for (auto p : pos)
                    m |= bit(p);
                return m;
            }

            auto search() -> optional<Witness>
            {
                auto & type = _instance.type;
                optional<Witness> found;

                switch (type.action) {
                case Action::add_candidates_unlimited:
                case Action::add_candidates_limited: {
                    auto qualified = mask_of(_election, _instance.qualified());
                    vector<size_t> spoilers;
                    for (auto & d : _instance.spoilers)
                        spoilers.push_back(_election.index_of(d));
                    std::sort(spoilers.begin(), spoilers.end());
                    size_t max_size = type.action == Action::add_candidates_limited ? _instance.limit : spoilers.size();
                    for_each_subset(spoilers, max_size, [&](const vector<size_t> & added) {
                        tick();
                        if (succeeded(final_of(_weights, qualified | mask_at(added)))) {
                            found = CandidateSubset{ids_at(added)};
                            return true;
                        }
                        return false;
                    });
                    break;
                }

                case Action::delete_candidates: {
                    auto deletable = positions(type.goal == Goal::destructive ? _full & ~_goal : _full);
                    for_each_subset(deletable, _instance.limit, [&](const vector<size_t> & gone) {
                        tick();
                        if (succeeded(final_of(_weights, _full & ~mask_at(gone)))) {
                            found = DeletedCandidates{ids_at(gone)};
                            return true;
                        }
                        return false;
                    });
                    break;
                }

                case Action::partition_candidates:
                case Action::runoff_partition_candidates: {
                    bool runoff = type.action == Action::runoff_partition_candidates;
                    for_each_subset(positions(_full), _election.num_candidates(), [&](const vector<size_t> & first) {
                        tick();
                        auto c1 = mask_at(first);
                        auto c2 = _full & ~c1;
                        auto finalists = stage(_weights, c1) | (runoff ? stage(_weights, c2) : c2);
                        if (succeeded(final_of(_weights, finalists))) {
                            found = CandidateBipartition{ids_at(first), ids_at(positions(c2))};
                            return true;
                        }
                        return false;
                    });
                    break;
                }

                case Action::add_voters: {
                    Profile pool(_election, _instance.pool);
                    auto base_types = _types.size();
                    _types.insert(_types.end(), pool.types().begin(), pool.types().end());
                    vector<long> weights = _weights;
                    weights.resize(_types.size(), 0);
                    for_each_count_vector(pool.multiplicities(), clamped_limit(), [&](const vector<long> & x) {
                        tick();
                        std::copy(x.begin(), x.end(), weights.begin() + long(base_types));
                        if (succeeded(final_of(weights, _full))) {
                            found = VoterSubset{take_members(pool, x)};
                            return true;
                        }
                        return false;
                    });
                    break;
                }

                case Action::delete_voters: {
                    vector<long> weights(_weights.size());
                    for_each_count_vector(_weights, clamped_limit(), [&](const vector<long> & x) {
                        tick();
                        for (size_t t = 0; t < x.size(); ++t)
                            weights[t] = _weights[t] - x[t];
                        if (succeeded(final_of(weights, _full))) {
                            found = DeletedVoters{take_members(_voters, x)};
                            return true;
                        }
                        return false;
                    });
                    break;
                }

                case Action::partition_voters: {
                    vector<long> rest(_weights.size());
                    long total = std::accumulate(_weights.begin(), _weights.end(), 0L);
                    for_each_count_vector(_weights, total, [&](const vector<long> & x) {
                        for (size_t t = 0; t < x.size(); ++t)
                            rest[t] = _weights[t] - x[t];
                        if (std::lexicographical_compare(x.begin(), x.end(), rest.begin(), rest.end()))
                            return false;
                        tick();
                        auto finalists = stage(x, _full) | stage(rest, _full);
                        if (succeeded(final_of(_weights, finalists))) {
                            auto first = take_members(_voters, x);
                            found = VoterBipartition{first, complement_indices(first, _election.num_voters())};
                            return true;
                        }
                        return false;
                    });
                    break;
                }
                }
                return found;
            }
        };

        auto require(const ControlInstance & instance, Action action, optional<TieRule> rule = nullopt) -> void
        {
            instance.validate();
            if (instance.type.goal != Goal::destructive || instance.type.action != action || instance.type.tie_rule != rule)
                throw Error("decider handles destructive-" + action_name(action, rule) + ", not " + type_name(instance.type));
        }

        auto polynomial_decision(optional<Witness> w, SearchStats stats) -> Decision
        {
            Decision d;
            d.method = Method::polynomial;
            d.witness = std::move(w);
            d.stats = stats;
            return d;
        }
    }

    auto decide_brute(const ControlInstance & instance, std::uint64_t budget) -> Decision
    {
        instance.validate();
        return BruteSearch{instance, budget}.run();
    }

    auto decide_destructive_add_voters(const ControlInstance & instance) -> Decision
    {
        require(instance, Action::add_voters);
        auto e = normalize(instance.election);
        auto & c = instance.goal_candidate;
        SearchStats stats;

        auto w = unique_winner(e);
        if (w != c)
            return polynomial_decision(VoterSubset{}, stats);

        auto scores = score_table(e);
        vector<Ballot> pool;
        for (auto & b : instance.pool)
            pool.push_back(rewrite_ballot(b, e.num_candidates()));

        for (auto & d : e.candidates()) {
            if (d == c)
                continue;
            ++stats.nodes;
            auto gap = scores.score(c) - scores.score(d);
            vector<size_t> helpers;
            for (size_t i = 0; i < pool.size(); ++i)
                if (pool[i].approves(d) && ! pool[i].approves(c))
                    helpers.push_back(i);
            stats.work += pool.size();
            if (gap <= long(std::min(instance.limit, helpers.size()))) {
                helpers.resize(size_t(gap));
                return polynomial_decision(VoterSubset{helpers}, stats);
            }
        }
        return polynomial_decision(nullopt, stats);
    }

    auto decide_destructive_delete_voters(const ControlInstance & instance) -> Decision
    {
        require(instance, Action::delete_voters);
        auto e = normalize(instance.election);
        auto & c = instance.goal_candidate;
        SearchStats stats;

        if (unique_winner(e) != c)
            return polynomial_decision(DeletedVoters{}, stats);

        auto scores = score_table(e);
        for (auto & d : e.candidates()) {
            if (d == c)
                continue;
            ++stats.nodes;
            auto gap = scores.score(c) - scores.score(d);
            vector<size_t> removable;
            for (size_t v = 0; v < e.num_voters(); ++v)
                if (e.ballots()[v].approves(c) && ! e.ballots()[v].approves(d))
                    removable.push_back(v);
            stats.work += e.num_voters();
            if (gap <= long(std::min(instance.limit, removable.size()))) {
                removable.resize(size_t(gap));
                return polynomial_decision(DeletedVoters{removable}, stats);
            }
        }
        return polynomial_decision(nullopt, stats);
    }

    auto loop_counters(const Election & election, const CandidateId & a, const CandidateId & b, const CandidateId & c)
        -> LoopCounters
    {
        LoopCounters n;
        for (auto & v : election.ballots()) {
            bool in_a = v.approves(a), in_b = v.approves(b), in_c = v.approves(c);
            if (! in_a && ! in_b && in_c)
                ++n.c_wins;
            else if (in_a && in_b && ! in_c)
                ++n.c_loses;
            else if (in_a && ! in_b && ! in_c)
                ++n.a_gains;
            else if (! in_a && in_b && ! in_c)
                ++n.b_gains;
            else if (in_a && ! in_b && in_c)
                ++n.a_and_c_gain;
        }
        return n;
    }

    auto rival_set(const Election & election, const CandidateId & c) -> vector<CandidateId>
    {
        vector<CandidateId> result;
        for (auto & y : election.candidates())
            if (y != c && preference_margin(election, y, c) >= 0)
                result.push_back(y);
        return result;
    }

    auto decide_destructive_pv_te(const ControlInstance & instance) -> Decision
    {
        require(instance, Action::partition_voters, TieRule::eliminate);
        auto e = normalize(instance.election);
        auto & c = instance.goal_candidate;
        auto n = e.num_voters();
        SearchStats stats;

        auto split = [&](vector<size_t> first) {
            std::sort(first.begin(), first.end());
            return VoterBipartition{first, complement_indices(first, n)};
        };

        if (e.num_candidates() == 1)
            return polynomial_decision(nullopt, stats);
        if (unique_winner(e) != c)
            return polynomial_decision(split(complement_indices({}, n)), stats);
        if (e.num_candidates() == 2)
            return polynomial_decision(nullopt, stats);

        for (auto & a : e.candidates()) {
            for (auto & b : e.candidates()) {
                if (a == b || a == c || b == c)
                    continue;
                ++stats.nodes;
                stats.work += n;
                auto counts = loop_counters(e, a, b, c);
                if (! counts.splittable())
                    continue;

                vector<size_t> first;
                long c_wins_taken = 0, c_wins_quota = std::min(counts.c_wins, counts.a_gains);
                for (size_t v = 0; v < n; ++v) {
                    auto & ballot = e.ballots()[v];
                    bool in_a = ballot.approves(a), in_b = ballot.approves(b), in_c = ballot.approves(c);
                    if (in_a && ! in_b)
                        first.push_back(v);
                    else if (! in_a && ! in_b && in_c && c_wins_taken < c_wins_quota) {
                        first.push_back(v);
                        ++c_wins_taken;
                    }
                }
                return polynomial_decision(split(first), stats);
            }
        }

        for (auto & d : rival_set(e, c)) {
            ++stats.nodes;
            stats.work += n;
            vector<size_t> first;
            vector<Ballot> approvers;
            for (size_t v = 0; v < n; ++v)
                if (e.ballots()[v].approves(d)) {
                    first.push_back(v);
                    approvers.push_back(e.ballots()[v]);
                }
            if (unique_winner(e.with_ballots(approvers)) == d)
                return polynomial_decision(split(first), stats);
        }

        return polynomial_decision(nullopt, stats);
    }

    auto decide_polynomial(const ControlInstance & instance) -> Decision
    {
        if (! has_polynomial_decider(instance.type))
            throw Error("no polynomial-time decider for " + type_name(instance.type));
        switch (instance.type.action) {
        case Action::add_voters: return decide_destructive_add_voters(instance);
        case Action::delete_voters: return decide_destructive_delete_voters(instance);
        default: return decide_destructive_pv_te(instance);
        }
    }
}
