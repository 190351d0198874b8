#include "support.hh"

#include <spav/error.hh>
#include <spav/profile.hh>

#include <doctest.h>

#include <algorithm>

using namespace spav;
using namespace spav::test;

namespace
{
    const char * prop1 = R"(
candidates: a b c d
vote: b c a | d
vote: c | a d b
vote: a b c | d
vote: b a c | d
)";

    auto ballot(std::initializer_list<const char *> ranking, std::size_t t) -> Ballot
    {
        return Ballot{ids(ranking), t};
    }
}

TEST_CASE("candidate ids reject empty labels")
{
    CHECK_THROWS_AS(CandidateId(""), Error);
    CHECK(CandidateId("a") < CandidateId("b"));
}

TEST_CASE("admissibility of ballots")
{
    CHECK(ballot({"a", "b", "c"}, 1).admissible());
    CHECK(ballot({"a", "b", "c"}, 2).admissible());
    CHECK_FALSE(ballot({"a", "b", "c"}, 0).admissible());
    CHECK_FALSE(ballot({"a", "b", "c"}, 3).admissible());
    CHECK(ballot({"a"}, 1).admissible());
    CHECK(ballot({"a"}, 0).admissible());
}

TEST_CASE("rewrite rule moves only the approval line")
{
    CHECK(rewrite_ballot(ballot({"a", "b", "c"}, 0), 3) == ballot({"a", "b", "c"}, 1));
    CHECK(rewrite_ballot(ballot({"a", "b", "c"}, 3), 3) == ballot({"a", "b", "c"}, 2));
    CHECK(rewrite_ballot(ballot({"a", "b", "c"}, 2), 3) == ballot({"a", "b", "c"}, 2));
    CHECK(rewrite_ballot(ballot({"a", "b"}, 2), 2) == ballot({"a", "b"}, 1));

    SUBCASE("single-candidate ballots are left alone")
    {
        CHECK(rewrite_ballot(ballot({"a"}, 0), 1) == ballot({"a"}, 0));
        CHECK(rewrite_ballot(ballot({"a"}, 1), 1) == ballot({"a"}, 1));
    }
    SUBCASE("size mismatch is an error")
    {
        CHECK_THROWS_AS(rewrite_ballot(ballot({"a", "b"}, 1), 3), Error);
    }
}

TEST_CASE("election construction validates ballots")
{
    CHECK_THROWS_AS(Election({}, {}), Error);
    CHECK_THROWS_AS(Election(ids({"a", "a"}), {}), Error);
    CHECK_THROWS_AS(Election(ids({"a", "b"}), {ballot({"a"}, 1)}), Error);
    CHECK_THROWS_AS(Election(ids({"a", "b"}), {ballot({"a", "c"}, 1)}), Error);
    CHECK_THROWS_AS(Election(ids({"a", "b"}), {ballot({"a", "a"}, 1)}), Error);
    CHECK_THROWS_AS(Election(ids({"a", "b"}), {ballot({"a", "b"}, 3)}), Error);
    CHECK_NOTHROW(Election(ids({"a", "b"}), {}));
}

TEST_CASE("scores and winners of the warp example")
{
    auto e = election_from(prop1);
    auto s = score_table(e);
    CHECK(s.score(CandidateId("a")) == 3);
    CHECK(s.score(CandidateId("b")) == 3);
    CHECK(s.score(CandidateId("c")) == 4);
    CHECK(s.score(CandidateId("d")) == 0);
    CHECK(s.total() == 10);
    CHECK(unique_winner(e) == CandidateId("c"));

    auto keep = ids({"a", "b", "c"});
    auto r = restrict_election(e, keep);
    REQUIRE(r.num_voters() == 4);
    CHECK(r.ballots()[0] == ballot({"b", "c", "a"}, 2));
    CHECK(r.ballots()[1] == ballot({"c", "a", "b"}, 1));
    CHECK(r.ballots()[2] == ballot({"a", "b", "c"}, 2));
    CHECK(r.ballots()[3] == ballot({"b", "a", "c"}, 2));
    CHECK(unique_winner(r) == CandidateId("b"));
    CHECK(winners(r) == ids({"b"}));
}

TEST_CASE("restriction keeps the roster order and rejects bad sets")
{
    auto e = election_from(prop1);
    auto r = restrict_election(e, ids({"c", "a"}));
    CHECK(r.candidates() == ids({"a", "c"}));
    CHECK_THROWS_AS(restrict_election(e, std::vector<CandidateId>{}), Error);
    CHECK_THROWS_AS(restrict_election(e, ids({"a", "z"})), Error);
}

TEST_CASE("ties and empty elections")
{
    auto e = election_from("candidates: a b c\n");
    CHECK(winners(e) == ids({"a", "b", "c"}));
    CHECK_FALSE(unique_winner(e).has_value());
    auto tie = election_from("candidates: a b\nvote: a | b\nvote: b | a\n");
    CHECK(winners(tie).size() == 2);
}

TEST_CASE("preference margins")
{
    auto e = election_from(prop1);
    // a over d in all four ballots.
    CHECK(preference_margin(e, CandidateId("a"), CandidateId("d")) == 4);
    CHECK(preference_margin(e, CandidateId("d"), CandidateId("a")) == -4);
    CHECK(preference_margin(e, CandidateId("b"), CandidateId("c")) == 2);
    CHECK_THROWS_AS(preference_margin(e, CandidateId("a"), CandidateId("a")), Error);
}

TEST_CASE("normalize applies the rewrite rule to every ballot")
{
    auto e = election_from("candidates: a b c\nvote: a b c |\nvote: | c b a\nvote: b | a c\n");
    auto n = normalize(e);
    CHECK(n.ballots()[0].approval_count == 2);
    CHECK(n.ballots()[1].approval_count == 1);
    CHECK(n.ballots()[2].approval_count == 1);
    // Raw scores count the ballots as cast.
    CHECK(score_table(e).score(CandidateId("c")) == 1);
    CHECK(score_table(n).score(CandidateId("c")) == 1);
    CHECK(score_table(n).score(CandidateId("a")) == 1);
}

TEST_CASE("random ballots: rewrite idempotence, admissibility, conservation")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        auto n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        auto roster = letters(n);
        auto b = random_ballot(rng, roster, false);
        auto r = rewrite_ballot(b, n);
        REQUIRE(rewrite_ballot(r, n) == r);
        REQUIRE(r.ranking == b.ranking);
        if (n >= 2)
            REQUIRE(r.admissible());
        if (b.admissible())
            REQUIRE(r == b);

        std::vector<CandidateId> keep;
        for (auto & c : roster)
            if (rng() % 2)
                keep.push_back(c);
        if (keep.empty())
            keep.push_back(roster.front());
        auto e = Election(roster, {b, b, r});
        auto restricted = restrict_election(e, keep);
        long approvals = 0;
        for (auto & x : restricted.ballots()) {
            REQUIRE(x.ranking.size() == keep.size());
            if (keep.size() >= 2)
                REQUIRE(x.admissible());
            approvals += long(x.approval_count);
        }
        REQUIRE(score_table(restricted).total() == approvals);

        auto naive_scores = naive::scores(
            [&] {
                std::vector<std::string> names;
                for (auto & c : keep)
                    names.push_back(c.label());
                return names;
            }(),
            naive::votes_of(e.ballots()));
        for (auto & c : keep)
            REQUIRE(score_table(restricted).score(c) == naive_scores.at(c.label()));
    }
}

TEST_CASE("voicedness: a lone candidate always wins")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto e = random_election(rng, 5, 6, 3);
        auto c = e.candidates()[rng() % e.num_candidates()];
        std::vector<CandidateId> keep{c};
        CHECK(unique_winner(restrict_election(e, keep)) == c);
    }
}

TEST_CASE("winners do not depend on voter order")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        auto e = random_election(rng, 5, 6, 3);
        auto ballots = e.ballots();
        std::shuffle(ballots.begin(), ballots.end(), rng);
        CHECK(winners(e.with_ballots(ballots)) == winners(e));
    }
}

TEST_CASE("profile scores agree with restricted elections")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        auto e = random_election(rng, 5, 6, 3);
        Profile p(e, e.ballots());
        long sum = 0;
        for (auto m : p.multiplicities())
            sum += m;
        REQUIRE(sum == long(e.num_voters()));

        auto keep_mask = (rng() % full_mask(e.num_candidates())) + 1;
        auto keep = members_of(e, keep_mask);
        std::vector<long> scores(e.num_candidates());
        restricted_scores(p.types(), p.multiplicities(), keep_mask, scores);
        auto r = restrict_election(e, keep);
        auto table = score_table(r);
        for (auto & c : keep)
            REQUIRE(scores[e.index_of(c)] == table.score(c));
        REQUIRE(members_of(e, restricted_winners(p.types(), p.multiplicities(), keep_mask)) == winners(r));
    }
}
