#include "support.hh"

#include <spav/error.hh>
#include <spav/io.hh>

#include <doctest.h>

#include <set>

using namespace spav;
using namespace spav::test;

namespace
{
    const char * voter_example = R"(
candidates: a b c d e f
vote: a b c | d e f
vote: a c | b d e f
vote: c b a d | e f
vote: a b | d e c f
vote: a d c | b e f
vote: e b c d | a f
vote: d e c f | b a
vote: d f | b a c e
)";

    auto instance(const Election & e, const char * goal, ControlType type, std::size_t limit = 0) -> ControlInstance
    {
        return ControlInstance{e, CandidateId(goal), type, limit, {}, {}};
    }
}

TEST_CASE("there are 22 control types with distinct names")
{
    auto all = all_control_types();
    CHECK(all.size() == 22);
    std::set<std::string> names;
    for (auto & t : all) {
        names.insert(type_name(t));
        CHECK(parse_control_type(type_name(t)) == t);
        CHECK(is_partition(t.action) == t.tie_rule.has_value());
    }
    CHECK(names.size() == 22);
    CHECK(parse_control_type("delete-voters") == ControlType{Goal::constructive, Action::delete_voters, std::nullopt});
    CHECK_THROWS_AS(parse_control_type("destructive-bribery"), Error);
}

TEST_CASE("promotion under the two tie rules")
{
    CHECK(promoted(ids({"a"}), TieRule::eliminate) == ids({"a"}));
    CHECK(promoted(ids({"a", "b"}), TieRule::eliminate).empty());
    CHECK(promoted(ids({"a", "b"}), TieRule::promote) == ids({"a", "b"}));
    CHECK(promoted({}, TieRule::promote).empty());
}

TEST_CASE("voter partition from the susceptibility example")
{
    auto e = election_from(voter_example);
    VoterBipartition w{{0, 1, 2, 3}, {4, 5, 6, 7}};
    for (auto rule : {TieRule::eliminate, TieRule::promote}) {
        auto i = instance(e, "c", ControlType{Goal::destructive, Action::partition_voters, rule});
        auto final = final_election(i, w);
        REQUIRE(final.has_value());
        CHECK(final->candidates() == ids({"a", "d"}));
        auto s = score_table(*final);
        CHECK(s.score(CandidateId("a")) == 5);
        CHECK(s.score(CandidateId("d")) == 3);
        CHECK(check_witness(i, w));
    }
}

TEST_CASE("witness validation")
{
    auto e = election_from(voter_example);
    SUBCASE("voter partitions must cover every voter exactly once")
    {
        auto i = instance(e, "c", ControlType{Goal::destructive, Action::partition_voters, TieRule::eliminate});
        CHECK_THROWS_AS(validate_witness(i, VoterBipartition{{0, 1}, {2, 3}}), Error);
        CHECK_THROWS_AS(validate_witness(i, VoterBipartition{{0, 1, 2, 3, 4}, {4, 5, 6, 7}}), Error);
        CHECK_THROWS_AS(validate_witness(i, VoterBipartition{{0, 1, 2, 3, 8}, {4, 5, 6, 7}}), Error);
    }
    SUBCASE("limits are enforced")
    {
        auto i = instance(e, "c", ControlType{Goal::destructive, Action::delete_voters, std::nullopt}, 1);
        CHECK_NOTHROW(validate_witness(i, DeletedVoters{{1}}));
        CHECK_THROWS_AS(validate_witness(i, DeletedVoters{{1, 2}}), Error);
        CHECK_THROWS_AS(validate_witness(i, DeletedVoters{{1, 1}}), Error);
    }
    SUBCASE("destructive deleting may not delete the goal")
    {
        auto i = instance(e, "c", ControlType{Goal::destructive, Action::delete_candidates, std::nullopt}, 2);
        CHECK_THROWS_AS(validate_witness(i, DeletedCandidates{ids({"c"})}), Error);
        CHECK_NOTHROW(validate_witness(i, DeletedCandidates{ids({"a"})}));
    }
    SUBCASE("the witness kind must match the action")
    {
        auto i = instance(e, "c", ControlType{Goal::destructive, Action::delete_voters, std::nullopt}, 1);
        CHECK_THROWS_AS(validate_witness(i, DeletedCandidates{ids({"a"})}), Error);
    }
}

TEST_CASE("empty halves of a voter partition")
{
    // With no voters every candidate ties, so TE promotes nobody from that half.
    auto e = election_from("candidates: a b\nvote x2: a | b\n");
    VoterBipartition w{{}, {0, 1}};
    auto te = instance(e, "a", ControlType{Goal::constructive, Action::partition_voters, TieRule::eliminate});
    CHECK(final_winners(te, w) == ids({"a"}));
    auto tp = instance(e, "a", ControlType{Goal::constructive, Action::partition_voters, TieRule::promote});
    CHECK(final_winners(tp, w) == ids({"a"}));
    CHECK(final_election(tp, w)->candidates() == ids({"a", "b"}));
}

TEST_CASE("empty candidate groups and empty final stages")
{
    auto e = election_from("candidates: a b\nvote: a | b\nvote: b | a\n");
    auto rpc = instance(e, "a", ControlType{Goal::destructive, Action::runoff_partition_candidates, TieRule::eliminate});
    CandidateBipartition w{ids({"a", "b"}), {}};
    CHECK_FALSE(final_election(rpc, w).has_value());
    CHECK(final_winners(rpc, w).empty());
    CHECK(check_witness(rpc, w));
}

TEST_CASE("constructive and destructive outcomes are complementary")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 400; ++trial) {
        auto e = random_election(rng, 4, 5, 2);
        auto goal = e.candidates()[rng() % e.num_candidates()];
        std::vector<std::size_t> first, second;
        for (std::size_t v = 0; v < e.num_voters(); ++v)
            (rng() % 2 ? first : second).push_back(v);
        for (auto rule : {TieRule::eliminate, TieRule::promote}) {
            ControlInstance con{e, goal, ControlType{Goal::constructive, Action::partition_voters, rule}, 0, {}, {}};
            auto des = con;
            des.type.goal = Goal::destructive;
            VoterBipartition w{first, second};
            REQUIRE(check_witness(con, w) != check_witness(des, w));
        }
    }
}

TEST_CASE("instance validation")
{
    auto e = election_from("candidates: a b c\nvote: a | b c\n");
    CHECK_THROWS_AS(instance(e, "z", ControlType{Goal::constructive, Action::delete_voters, std::nullopt}).validate(), Error);
    auto ac = instance(e, "c", ControlType{Goal::constructive, Action::add_candidates_limited, std::nullopt});
    ac.spoilers = ids({"c"});
    CHECK_THROWS_AS(ac.validate(), Error);
    auto pv = instance(e, "a", ControlType{Goal::constructive, Action::partition_voters, std::nullopt});
    CHECK_THROWS_AS(pv.validate(), Error);
}
