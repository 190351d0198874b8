#include <spav/control.hh>
#include <spav/error.hh>

#include <algorithm>
#include <set>

using std::nullopt;
using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace spav
{
    auto is_partition(Action a) -> bool
    {
        return a == Action::partition_candidates || a == Action::runoff_partition_candidates || a == Action::partition_voters;
    }

    auto is_candidate_control(Action a) -> bool
    {
        switch (a) {
        case Action::add_candidates_unlimited:
        case Action::add_candidates_limited:
        case Action::delete_candidates:
        case Action::partition_candidates:
        case Action::runoff_partition_candidates:
            return true;
        default:
            return false;
        }
    }

    auto has_limit(Action a) -> bool
    {
        return a == Action::add_candidates_limited || a == Action::delete_candidates || a == Action::add_voters
            || a == Action::delete_voters;
    }

    auto all_control_types() -> vector<ControlType>
    {
        static const Action actions[] = {Action::add_candidates_unlimited, Action::add_candidates_limited,
            Action::delete_candidates, Action::partition_candidates, Action::runoff_partition_candidates,
            Action::add_voters, Action::delete_voters, Action::partition_voters};

        vector<ControlType> result;
        for (auto goal : {Goal::constructive, Goal::destructive})
            for (auto a : actions) {
                if (is_partition(a)) {
                    result.push_back({goal, a, TieRule::eliminate});
                    result.push_back({goal, a, TieRule::promote});
                }
                else
                    result.push_back({goal, a, nullopt});
            }
        return result;
    }

    namespace
    {
        auto base_action_name(Action a) -> string
        {
            switch (a) {
            case Action::add_candidates_unlimited: return "add-candidates-unlimited";
            case Action::add_candidates_limited: return "add-candidates-limited";
            case Action::delete_candidates: return "delete-candidates";
            case Action::partition_candidates: return "partition-candidates";
            case Action::runoff_partition_candidates: return "runoff-partition-candidates";
            case Action::add_voters: return "add-voters";
            case Action::delete_voters: return "delete-voters";
            case Action::partition_voters: return "partition-voters";
            }
            throw Error("unknown action");
        }
    }

    auto action_name(Action a, optional<TieRule> rule) -> string
    {
        auto name = base_action_name(a);
        if (is_partition(a))
            name += rule.value_or(TieRule::eliminate) == TieRule::eliminate ? "-te" : "-tp";
        return name;
    }

    auto goal_name(Goal g) -> string
    {
        return g == Goal::constructive ? "constructive" : "destructive";
    }

    auto type_name(const ControlType & t) -> string
    {
        return goal_name(t.goal) + "-" + action_name(t.action, t.tie_rule);
    }

    auto parse_goal(string_view s) -> Goal
    {
        if (s == "constructive")
            return Goal::constructive;
        if (s == "destructive")
            return Goal::destructive;
        throw Error("unknown goal '" + string(s) + "' (expected constructive or destructive)");
    }

    auto parse_action(string_view s) -> std::pair<Action, optional<TieRule>>
    {
        for (auto & t : all_control_types())
            if (t.goal == Goal::constructive && action_name(t.action, t.tie_rule) == s)
                return {t.action, t.tie_rule};
        throw Error("unknown control action '" + string(s) + "'");
    }

    auto parse_control_type(string_view s) -> ControlType
    {
        Goal goal = Goal::constructive;
        for (auto g : {Goal::constructive, Goal::destructive}) {
            auto prefix = goal_name(g) + "-";
            if (s.starts_with(prefix)) {
                goal = g;
                s.remove_prefix(prefix.size());
                break;
            }
        }
        auto [action, rule] = parse_action(s);
        return ControlType{goal, action, rule};
    }

    auto ControlInstance::qualified() const -> vector<CandidateId>
    {
        vector<CandidateId> result;
        for (auto & c : election.candidates())
            if (std::find(spoilers.begin(), spoilers.end(), c) == spoilers.end())
                result.push_back(c);
        return result;
    }

    auto ControlInstance::validate() const -> void
    {
        if (is_partition(type.action) != type.tie_rule.has_value())
            throw Error("a tie rule is required exactly for partition control");

        std::set<CandidateId> spoiler_set;
        for (auto & d : spoilers) {
            if (! election.contains(d))
                throw Error("spoiler '" + d.label() + "' is not ranked by the ballots");
            if (! spoiler_set.insert(d).second)
                throw Error("spoiler '" + d.label() + "' listed twice");
        }
        bool adding_candidates = type.action == Action::add_candidates_limited || type.action == Action::add_candidates_unlimited;
        if (! adding_candidates && ! spoilers.empty())
            throw Error("spoiler candidates are only meaningful for adding candidates");

        auto c = qualified();
        if (c.empty())
            throw Error("the qualified candidate set is empty");
        if (std::find(c.begin(), c.end(), goal_candidate) == c.end())
            throw Error("goal candidate '" + goal_candidate.label() + "' is not a qualified candidate");

        if (type.action != Action::add_voters && ! pool.empty())
            throw Error("a voter pool is only meaningful for adding voters");
        for (size_t i = 0; i < pool.size(); ++i) {
            auto & b = pool[i];
            if (b.ranking.size() != c.size())
                throw Error("pool ballot " + std::to_string(i + 1) + " must rank exactly the qualified candidates");
            Election{c, {b}};
        }
    }

    namespace
    {
        template <typename T_>
        auto check_distinct(const vector<T_> & items, const string & what) -> void
        {
            std::set<T_> seen(items.begin(), items.end());
            if (seen.size() != items.size())
                throw Error(what + " lists a member twice");
        }

        auto check_limit(const ControlInstance & instance, size_t size, const string & what) -> void
        {
            if (size > instance.limit)
                throw Error(what + " has " + std::to_string(size) + " members, exceeding the limit of "
                    + std::to_string(instance.limit));
        }

        auto check_indices(const vector<size_t> & items, size_t bound, const string & what) -> void
        {
            for (auto i : items)
                if (i >= bound)
                    throw Error(what + " refers to voter " + std::to_string(i + 1) + " of " + std::to_string(bound));
            check_distinct(items, what);
        }

        auto expect_variant(bool ok, const ControlInstance & instance) -> void
        {
            if (! ok)
                throw Error("witness kind does not match control action " + action_name(instance.type.action, instance.type.tie_rule));
        }

        auto voters_in(const Election & e, const vector<size_t> & indices) -> vector<Ballot>
        {
            vector<Ballot> result;
            for (auto i : indices)
                result.push_back(e.ballots()[i]);
            return result;
        }

        auto union_in_roster_order(const Election & e, const vector<CandidateId> & a, const vector<CandidateId> & b)
            -> vector<CandidateId>
        {
            vector<CandidateId> result;
            for (auto & c : e.candidates())
                if (std::find(a.begin(), a.end(), c) != a.end() || std::find(b.begin(), b.end(), c) != b.end())
                    result.push_back(c);
            return result;
        }

        auto first_stage(const Election & e, const vector<CandidateId> & group, TieRule rule) -> vector<CandidateId>
        {
            if (group.empty())
                return {};
            return promoted(winners(restrict_election(e, group)), rule);
        }

        auto restrict_or_nothing(const Election & e, const vector<CandidateId> & keep) -> optional<Election>
        {
            if (keep.empty())
                return nullopt;
            return restrict_election(e, keep);
        }
    }

    auto promoted(const vector<CandidateId> & subelection_winners, TieRule rule) -> vector<CandidateId>
    {
        if (rule == TieRule::eliminate && subelection_winners.size() != 1)
            return {};
        return subelection_winners;
    }

    auto validate_witness(const ControlInstance & instance, const Witness & w) -> void
    {
        auto qualified = instance.qualified();
        auto in_qualified = [&](const CandidateId & c) {
            return std::find(qualified.begin(), qualified.end(), c) != qualified.end();
        };

        switch (instance.type.action) {
        case Action::add_candidates_unlimited:
        case Action::add_candidates_limited: {
            auto p = std::get_if<CandidateSubset>(&w);
            expect_variant(p, instance);
            for (auto & d : p->members)
                if (std::find(instance.spoilers.begin(), instance.spoilers.end(), d) == instance.spoilers.end())
                    throw Error("added candidate '" + d.label() + "' is not a spoiler");
            check_distinct(p->members, "added candidate set");
            if (instance.type.action == Action::add_candidates_limited)
                check_limit(instance, p->members.size(), "added candidate set");
            break;
        }
        case Action::delete_candidates: {
            auto p = std::get_if<DeletedCandidates>(&w);
            expect_variant(p, instance);
            for (auto & c : p->members) {
                if (! in_qualified(c))
                    throw Error("deleted candidate '" + c.label() + "' is not in the election");
                if (instance.type.goal == Goal::destructive && c == instance.goal_candidate)
                    throw Error("destructive control may not delete the goal candidate");
            }
            check_distinct(p->members, "deleted candidate set");
            check_limit(instance, p->members.size(), "deleted candidate set");
            break;
        }
        case Action::partition_candidates:
        case Action::runoff_partition_candidates: {
            auto p = std::get_if<CandidateBipartition>(&w);
            expect_variant(p, instance);
            vector<CandidateId> all = p->first;
            all.insert(all.end(), p->second.begin(), p->second.end());
            for (auto & c : all)
                if (! in_qualified(c))
                    throw Error("partitioned candidate '" + c.label() + "' is not in the election");
            check_distinct(all, "candidate partition");
            if (all.size() != qualified.size())
                throw Error("candidate partition does not cover every candidate");
            break;
        }
        case Action::add_voters: {
            auto p = std::get_if<VoterSubset>(&w);
            expect_variant(p, instance);
            check_indices(p->members, instance.pool.size(), "added voter set");
            check_limit(instance, p->members.size(), "added voter set");
            break;
        }
        case Action::delete_voters: {
            auto p = std::get_if<DeletedVoters>(&w);
            expect_variant(p, instance);
            check_indices(p->members, instance.election.num_voters(), "deleted voter set");
            check_limit(instance, p->members.size(), "deleted voter set");
            break;
        }
        case Action::partition_voters: {
            auto p = std::get_if<VoterBipartition>(&w);
            expect_variant(p, instance);
            vector<size_t> all = p->first;
            all.insert(all.end(), p->second.begin(), p->second.end());
            check_indices(all, instance.election.num_voters(), "voter partition");
            if (all.size() != instance.election.num_voters())
                throw Error("voter partition does not cover every voter");
            break;
        }
        }
    }

    auto final_election(const ControlInstance & instance, const Witness & w) -> optional<Election>
    {
        validate_witness(instance, w);
        auto & e = instance.election;

        switch (instance.type.action) {
        case Action::add_candidates_unlimited:
        case Action::add_candidates_limited:
            return restrict_election(e, union_in_roster_order(e, instance.qualified(), std::get<CandidateSubset>(w).members));

        case Action::delete_candidates: {
            auto & gone = std::get<DeletedCandidates>(w).members;
            vector<CandidateId> keep;
            for (auto & c : e.candidates())
                if (std::find(gone.begin(), gone.end(), c) == gone.end())
                    keep.push_back(c);
            return restrict_or_nothing(e, keep);
        }

        case Action::partition_candidates: {
            auto & p = std::get<CandidateBipartition>(w);
            auto survivors = first_stage(e, p.first, *instance.type.tie_rule);
            return restrict_or_nothing(e, union_in_roster_order(e, survivors, p.second));
        }

        case Action::runoff_partition_candidates: {
            auto & p = std::get<CandidateBipartition>(w);
            auto rule = *instance.type.tie_rule;
            return restrict_or_nothing(e, union_in_roster_order(e, first_stage(e, p.first, rule), first_stage(e, p.second, rule)));
        }

        case Action::add_voters: {
            auto ballots = e.ballots();
            for (auto i : std::get<VoterSubset>(w).members)
                ballots.push_back(instance.pool[i]);
            return normalize(e.with_ballots(std::move(ballots)));
        }

        case Action::delete_voters: {
            auto & gone = std::get<DeletedVoters>(w).members;
            vector<Ballot> ballots;
            for (size_t v = 0; v < e.num_voters(); ++v)
                if (std::find(gone.begin(), gone.end(), v) == gone.end())
                    ballots.push_back(e.ballots()[v]);
            return normalize(e.with_ballots(std::move(ballots)));
        }

        case Action::partition_voters: {
            auto & p = std::get<VoterBipartition>(w);
            auto rule = *instance.type.tie_rule;
            auto first = promoted(winners(normalize(e.with_ballots(voters_in(e, p.first)))), rule);
            auto second = promoted(winners(normalize(e.with_ballots(voters_in(e, p.second)))), rule);
            return restrict_or_nothing(e, union_in_roster_order(e, first, second));
        }
        }
        throw Error("unknown action");
    }

    auto final_winners(const ControlInstance & instance, const Witness & w) -> vector<CandidateId>
    {
        auto final = final_election(instance, w);
        if (! final)
            return {};
        return winners(*final);
    }

    auto check_witness(const ControlInstance & instance, const Witness & w) -> bool
    {
        auto result = final_winners(instance, w);
        bool goal_is_unique = result.size() == 1 && result.front() == instance.goal_candidate;
        return instance.type.goal == Goal::constructive ? goal_is_unique : ! goal_is_unique;
    }
}
