#include <spav/enumerate.hh>
#include <spav/error.hh>
#include <spav/reductions.hh>

#include <algorithm>
#include <set>

using std::nullopt;
using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace spav
{
    auto HittingSetInstance::validate() const -> void
    {
        if (elements.empty())
            throw Error("hitting set instance has no elements");
        std::set<string> distinct(elements.begin(), elements.end());
        if (distinct.size() != elements.size())
            throw Error("hitting set elements must be distinct");
        if (sets.empty())
            throw Error("hitting set collection must be nonempty");
        for (size_t i = 0; i < sets.size(); ++i) {
            if (sets[i].empty())
                throw Error("set " + std::to_string(i + 1) + " is empty");
            std::set<size_t> members(sets[i].begin(), sets[i].end());
            if (members.size() != sets[i].size())
                throw Error("set " + std::to_string(i + 1) + " repeats an element");
            for (auto e : sets[i])
                if (e >= elements.size())
                    throw Error("set " + std::to_string(i + 1) + " refers to an unknown element");
        }
        if (k < 1 || k > elements.size())
            throw Error("k must satisfy 1 <= k <= m");
    }

    auto HittingSetInstance::restricted() const -> bool
    {
        return k <= m() && n() * (k + 1) + 1 <= m() - k;
    }

    auto X3CInstance::validate() const -> void
    {
        if (elements.size() % 3 != 0 || elements.size() < 6)
            throw Error("X3C needs 3m elements with m > 1");
        std::set<string> distinct(elements.begin(), elements.end());
        if (distinct.size() != elements.size())
            throw Error("X3C elements must be distinct");
        if (triples.empty())
            throw Error("X3C collection must be nonempty");
        for (size_t i = 0; i < triples.size(); ++i) {
            auto & t = triples[i];
            if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
                throw Error("triple " + std::to_string(i + 1) + " must have three distinct elements");
            for (auto e : t)
                if (e >= elements.size())
                    throw Error("triple " + std::to_string(i + 1) + " refers to an unknown element");
        }
    }

    auto solve_hitting_set(const HittingSetInstance & h) -> optional<Certificate>
    {
        h.validate();
        vector<size_t> all(h.m());
        std::iota(all.begin(), all.end(), size_t{0});

        optional<Certificate> found;
        for_each_subset(all, h.k, [&](const vector<size_t> & pick) {
            for (auto & s : h.sets)
                if (std::none_of(s.begin(), s.end(), [&](size_t e) { return std::find(pick.begin(), pick.end(), e) != pick.end(); }))
                    return false;
            found = pick;
            return true;
        });
        return found;
    }

    namespace
    {
        auto cover_search(const X3CInstance & x, size_t next, vector<bool> & covered, size_t uncovered, Certificate & chosen) -> bool
        {
            if (uncovered == 0)
                return true;
            for (size_t i = next; i < x.n(); ++i) {
                auto & t = x.triples[i];
                if (covered[t[0]] || covered[t[1]] || covered[t[2]])
                    continue;
                for (auto e : t)
                    covered[e] = true;
                chosen.push_back(i);
                if (cover_search(x, i + 1, covered, uncovered - 3, chosen))
                    return true;
                chosen.pop_back();
                for (auto e : t)
                    covered[e] = false;
            }
            return false;
        }
    }

    auto solve_x3c(const X3CInstance & x) -> optional<Certificate>
    {
        x.validate();
        vector<bool> covered(x.elements.size(), false);
        Certificate chosen;
        if (cover_search(x, 0, covered, x.elements.size(), chosen))
            return chosen;
        return nullopt;
    }

    namespace
    {
        auto id(const string & s) -> CandidateId { return CandidateId{s}; }

        auto element_ids(const vector<string> & elements, const vector<size_t> & positions) -> vector<CandidateId>
        {
            vector<size_t> sorted = positions;
            std::sort(sorted.begin(), sorted.end());
            vector<CandidateId> result;
            for (auto p : sorted)
                result.push_back(id(elements[p]));
            return result;
        }

        auto element_ids_except(const vector<string> & elements, const vector<size_t> & excluded) -> vector<CandidateId>
        {
            vector<CandidateId> result;
            for (size_t p = 0; p < elements.size(); ++p)
                if (std::find(excluded.begin(), excluded.end(), p) == excluded.end())
                    result.push_back(id(elements[p]));
            return result;
        }

        /// Concatenates ranking segments and draws the approval line after `approved` entries.
        struct BallotBuilder
        {
            vector<Ballot> ballots;

            auto add(long copies, std::initializer_list<vector<CandidateId>> segments, size_t approved) -> void
            {
                Ballot b;
                for (auto & s : segments)
                    b.ranking.insert(b.ranking.end(), s.begin(), s.end());
                b.approval_count = approved;
                for (long i = 0; i < copies; ++i)
                    ballots.push_back(b);
            }
        };

        auto pad_to_k(const HittingSetInstance & h, const Certificate & hitting) -> vector<size_t>
        {
            vector<size_t> padded = hitting;
            for (size_t e = 0; e < h.m() && padded.size() < h.k; ++e)
                if (std::find(padded.begin(), padded.end(), e) == padded.end())
                    padded.push_back(e);
            std::sort(padded.begin(), padded.end());
            return padded;
        }

        auto restricted_score_gap(const Election & e, const CandidateId & x, const CandidateId & y, const vector<CandidateId> & keep) -> long
        {
            auto scores = score_table(restrict_election(e, keep));
            return scores.score(x) - scores.score(y);
        }

        auto x3c_padded(const X3CInstance & x) -> X3CInstance
        {
            X3CInstance padded = x;
            while (padded.n() < padded.m())
                padded.triples.push_back(x.triples.front());
            return padded;
        }
    }

    auto hitting_set_targets() -> vector<ControlType>
    {
        vector<ControlType> result;
        for (auto & t : all_control_types()) {
            if (t.action == Action::add_voters || t.action == Action::delete_voters)
                continue;
            if (t.action == Action::partition_voters && t.tie_rule != TieRule::promote)
                continue;
            if (t.action == Action::delete_candidates && t.goal == Goal::constructive)
                continue;
            result.push_back(t);
        }
        return result;
    }

    auto build_hitting_set_election(const HittingSetInstance & h, const ControlType & target) -> ReductionOutput
    {
        h.validate();
        auto targets = hitting_set_targets();
        if (std::find(targets.begin(), targets.end(), target) == targets.end())
            throw Error("the hitting-set construction does not reduce to " + type_name(target));
        if (target.action == Action::partition_voters && ! h.restricted())
            throw Error("partition of voters needs a restricted instance: n(k+1) + 1 <= m - k");

        long m = long(h.m()), n = long(h.n()), k = long(h.k);
        auto c = id("c"), w = id("w");
        auto all_b = element_ids_except(h.elements, {});

        BallotBuilder v;
        v.add(2 * (m - k) + 2 * n * (k + 1) + 4, {{c}, {w}, all_b}, 1);
        v.add(2 * n * (k + 1) + 5, {{w}, {c}, all_b}, 1);
        for (auto & s : h.sets)
            v.add(2 * (k + 1), {element_ids(h.elements, s), {c}, {w}, element_ids_except(h.elements, s)}, s.size());
        for (size_t j = 0; j < h.m(); ++j)
            v.add(2, {{id(h.elements[j])}, {w}, {c}, element_ids_except(h.elements, {j})}, 1);

        vector<CandidateId> roster{c, w};
        roster.insert(roster.end(), all_b.begin(), all_b.end());
        Election e{roster, v.ballots};

        ControlInstance instance{e, target.goal == Goal::constructive ? w : c, target, 0, {}, {}};
        if (target.action == Action::add_candidates_limited || target.action == Action::add_candidates_unlimited) {
            instance.spoilers = all_b;
            instance.limit = target.action == Action::add_candidates_limited ? h.k : 0;
        }
        else if (target.action == Action::delete_candidates)
            instance.limit = h.m() - h.k;
        instance.validate();

        long g1 = 0, g2 = 0, g3 = 0, g4 = 0;
        for (auto & b : e.ballots()) {
            if (b.ranking[0] == c)
                ++g1;
            else if (b.ranking[0] == w)
                ++g2;
            else if (b.ranking[b.approval_count] == c)
                ++g3;
            else
                ++g4;
        }

        ReductionOutput out{ReductionKind::hitting_set_election, instance, {}, h};
        out.quantities = {
            {"group-1-voters", 2 * (m - k) + 2 * n * (k + 1) + 4, g1},
            {"group-2-voters", 2 * n * (k + 1) + 5, g2},
            {"group-3-voters", 2 * n * (k + 1), g3},
            {"group-4-voters", 2 * m, g4},
            {"voters", 2 * (m - k) + 6 * n * (k + 1) + 4 + 5 + 2 * m, long(e.num_voters())},
            {"score(c)-score(w) on {c,w}", 2 * k * (n - 1) + 2 * n - 1, restricted_score_gap(e, c, w, {c, w})},
        };
        return out;
    }

    auto build_delete_candidates(const HittingSetInstance & h) -> ReductionOutput
    {
        h.validate();
        if (h.k >= h.m())
            throw Error("deleting-candidates reduction needs k < m");

        long m = long(h.m()), n = long(h.n()), k = long(h.k);
        auto w = id("w");
        auto all_b = element_ids_except(h.elements, {});

        BallotBuilder v;
        for (auto & s : h.sets)
            v.add(2 * (k + 1), {element_ids(h.elements, s), element_ids_except(h.elements, s), {w}}, s.size());
        for (auto & s : h.sets)
            v.add(2 * (k + 1), {element_ids_except(h.elements, s), {w}, element_ids(h.elements, s)}, h.m() - s.size() + 1);
        for (size_t j = 0; j < h.m(); ++j)
            v.add(2, {{id(h.elements[j])}, {w}, element_ids_except(h.elements, {j})}, 1);
        v.add(2 * (m - k), {all_b, {w}}, h.m());
        v.add(3, {{w}, all_b}, 1);

        vector<CandidateId> roster = all_b;
        roster.push_back(w);
        Election e{roster, v.ballots};

        ControlInstance instance{e, w, ControlType{Goal::constructive, Action::delete_candidates, nullopt}, h.m() - h.k, {}, {}};
        instance.validate();

        ReductionOutput out{ReductionKind::delete_candidates, instance, {}, h};
        out.quantities.push_back({"voters", 4 * n * (k + 1) + 4 * m - 2 * k + 3, long(e.num_voters())});
        auto scores = score_table(e);
        for (auto & b : all_b)
            out.quantities.push_back({"score(w)-score(" + b.label() + ")", 1 - 2 * (m - k), scores.score(w) - scores.score(b)});
        return out;
    }

    auto build_pv_te(const X3CInstance & source) -> ReductionOutput
    {
        source.validate();
        auto x = x3c_padded(source);
        long m = long(x.m()), n = long(x.n());

        auto w = id("w"), xc = id("x"), y = id("y");
        vector<CandidateId> z;
        for (long i = 1; i <= n; ++i)
            z.push_back(id("z" + std::to_string(i)));
        auto all_b = element_ids_except(x.elements, {});

        vector<long> occurrences(x.elements.size(), 0);
        for (auto & t : x.triples)
            for (auto e : t)
                ++occurrences[e];

        auto z_except = [&](long i) {
            vector<CandidateId> r;
            for (long j = 0; j < n; ++j)
                if (j != i)
                    r.push_back(z[size_t(j)]);
            return r;
        };

        BallotBuilder v;
        for (auto & t : x.triples) {
            vector<size_t> s(t.begin(), t.end());
            v.add(1, {{y}, element_ids(x.elements, s), {w}, element_ids_except(x.elements, s), {xc}, z}, 4);
        }
        for (long i = 0; i < n; ++i)
            v.add(1, {{y, z[size_t(i)]}, {w}, all_b, {xc}, z_except(i)}, 2);
        for (long i = 0; i < n; ++i) {
            vector<size_t> low;
            for (size_t j = 0; j < x.elements.size(); ++j)
                if (i + 1 <= n - occurrences[j])
                    low.push_back(j);
            v.add(1, {{w}, z_except(i), element_ids(x.elements, low), {xc, y, z[size_t(i)]}, element_ids_except(x.elements, low)},
                size_t(n) + low.size());
        }
        v.add(n + m, {{xc}, {y}, all_b, {w}, z}, 1);

        vector<CandidateId> roster = all_b;
        roster.insert(roster.end(), {w, xc, y});
        roster.insert(roster.end(), z.begin(), z.end());
        Election e{roster, v.ballots};

        ControlInstance instance{e, w, ControlType{Goal::constructive, Action::partition_voters, TieRule::eliminate}, 0, {}, {}};
        instance.validate();

        ReductionOutput out{ReductionKind::pv_te, instance, {}, source};
        out.quantities.push_back({"voters", 4 * n + m, long(e.num_voters())});
        out.quantities.push_back({"candidates", 3 * m + 3 + n, long(e.num_candidates())});
        auto scores = score_table(e);
        for (auto & b : all_b)
            out.quantities.push_back({"score(" + b.label() + ")", n, scores.score(b)});
        return out;
    }

    auto ReductionOutput::quantities_hold() const -> bool
    {
        return std::all_of(quantities.begin(), quantities.end(), [](auto & q) { return q.holds(); });
    }

    auto ReductionOutput::witness_for(const Certificate & certificate) const -> optional<Witness>
    {
        switch (kind) {
        case ReductionKind::hitting_set_election: {
            auto & h = std::get<HittingSetInstance>(source);
            auto padded = pad_to_k(h, certificate);
            switch (instance.type.action) {
            case Action::add_candidates_limited:
            case Action::add_candidates_unlimited:
                return CandidateSubset{element_ids(h.elements, padded)};
            case Action::delete_candidates:
                return DeletedCandidates{element_ids_except(h.elements, padded)};
            default:
                return nullopt;
            }
        }
        case ReductionKind::delete_candidates: {
            auto & h = std::get<HittingSetInstance>(source);
            return DeletedCandidates{element_ids_except(h.elements, pad_to_k(h, certificate))};
        }
        case ReductionKind::pv_te: {
            auto n = x3c_padded(std::get<X3CInstance>(source)).n();
            auto m = std::get<X3CInstance>(source).m();
            vector<size_t> first;
            for (auto i : certificate)
                first.push_back(i);
            for (size_t i = 0; i < n; ++i)
                first.push_back(n + i);
            for (size_t i = 0; i < n + m; ++i)
                first.push_back(3 * n + i);
            std::sort(first.begin(), first.end());
            vector<size_t> second;
            for (size_t v = 0; v < instance.election.num_voters(); ++v)
                if (! std::binary_search(first.begin(), first.end(), v))
                    second.push_back(v);
            return VoterBipartition{first, second};
        }
        }
        return nullopt;
    }

    auto reduce(const std::variant<HittingSetInstance, X3CInstance> & source, const ControlType & target) -> ReductionOutput
    {
        if (auto x = std::get_if<X3CInstance>(&source)) {
            if (target != ControlType{Goal::constructive, Action::partition_voters, TieRule::eliminate})
                throw Error("X3C reduces only to constructive-partition-voters-te, not " + type_name(target));
            return build_pv_te(*x);
        }
        auto & h = std::get<HittingSetInstance>(source);
        if (target == ControlType{Goal::constructive, Action::delete_candidates, nullopt})
            return build_delete_candidates(h);
        return build_hitting_set_election(h, target);
    }

    auto EquivalenceReport::passed() const -> bool
    {
        if (! quantities_hold || ! brute_possible || *brute_possible != oracle_positive)
            return false;
        if (witness_passes == false)
            return false;
        return std::all_of(witness_quantities.begin(), witness_quantities.end(), [](auto & q) { return q.holds(); });
    }

    auto verify_equivalence(const ReductionOutput & r, const optional<Certificate> & oracle, std::uint64_t budget) -> EquivalenceReport
    {
        EquivalenceReport report;
        report.oracle_positive = oracle.has_value();
        report.quantities_hold = r.quantities_hold();

        try {
            auto d = decide_brute(r.instance, budget);
            report.brute_possible = d.possible();
            report.stats = d.stats;
        }
        catch (const BudgetExceeded &) {
            report.brute_possible = nullopt;
        }

        if (oracle) {
            if (auto w = r.witness_for(*oracle)) {
                report.witness_passes = check_witness(r.instance, *w);
                if (r.kind == ReductionKind::delete_candidates) {
                    auto final = final_election(r.instance, *w);
                    auto scores = score_table(*final);
                    auto goal = r.instance.goal_candidate;
                    for (auto & b : final->candidates())
                        if (b != goal)
                            report.witness_quantities.push_back(
                                {"after: score(w)-score(" + b.label() + ")", 1, scores.score(goal) - scores.score(b)});
                }
            }
        }
        return report;
    }

    auto verify_equivalence(const ReductionOutput & r, std::uint64_t budget) -> EquivalenceReport
    {
        optional<Certificate> oracle;
        if (auto h = std::get_if<HittingSetInstance>(&r.source))
            oracle = solve_hitting_set(*h);
        else
            oracle = solve_x3c(std::get<X3CInstance>(r.source));
        return verify_equivalence(r, oracle, budget);
    }
}
