#include "support.hh"

#include <spav/error.hh>
#include <spav/io.hh>
#include <spav/reductions.hh>

#include <doctest.h>

using namespace spav;
using namespace spav::test;

namespace
{
    auto error_line(auto && f) -> std::size_t
    {
        try {
            f();
        }
        catch (const ParseError & e) {
            return e.line();
        }
        return 0;
    }
}

TEST_CASE("tokenizer splits keys, modifiers and bars")
{
    auto r = tokenize("# comment\nvote x2: a b|c  # trailing\n\n[check x]\n---\n");
    REQUIRE(r.size() == 3);
    CHECK(r[0].line == 2);
    CHECK(r[0].key == "vote");
    CHECK(r[0].modifier == "x2");
    CHECK(r[0].values == std::vector<std::string>{"a", "b", "|", "c"});
    CHECK(r[1].key.empty());
    CHECK(r[1].values.front() == "[check x]");
    CHECK(r[2].values.front() == "---");
}

TEST_CASE("parsing elections")
{
    auto p = parse_election("candidates: a b c\nvote x3: b | a c\nvote: a c b |\n");
    CHECK(p.election.num_voters() == 4);
    CHECK(p.election.ballots()[0] == p.election.ballots()[2]);
    REQUIRE(p.warnings.size() == 1);
    CHECK(p.warnings.front().find("line 3") != std::string::npos);

    auto rewritten = parse_election("candidates: a b c\nvote: a c b |\n", true);
    CHECK(rewritten.warnings.empty());
    CHECK(rewritten.election.ballots()[0].approval_count == 2);
}

TEST_CASE("parse errors carry line numbers")
{
    CHECK(error_line([] { parse_election("candidates: a b\nvote: a | c\n"); }) == 2);
    CHECK(error_line([] { parse_election("candidates: a b\n\nvote: a b\n"); }) == 3);
    CHECK(error_line([] { parse_election("candidates: a b\nvote: a | | b\n"); }) == 2);
    CHECK(error_line([] { parse_election("candidates: a b\nvote x0: a | b\n"); }) == 2);
    CHECK(error_line([] { parse_election("candidates: a b\nballot: a | b\n"); }) == 2);
    CHECK(error_line([] { parse_election("vote: a | b\n"); }) != 0);
}

TEST_CASE("elections round-trip through text")
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        auto e = random_election(rng, 5, 6, 3);
        CHECK(parse_election(format_election(e)).election == e);
    }
}

TEST_CASE("instances and witnesses round-trip through text")
{
    std::mt19937_64 rng(47);
    for (auto & type : all_control_types()) {
        auto i = random_instance(rng, type);
        auto back = parse_instance(format_instance(i));
        CHECK(back.type == i.type);
        CHECK(back.goal_candidate == i.goal_candidate);
        CHECK(back.limit == i.limit);
        CHECK(back.spoilers == i.spoilers);
        CHECK(back.pool == i.pool);
        CHECK(back.election.num_voters() == i.election.num_voters());
    }

    auto i = parse_instance(R"(
control: destructive partition-voters-te
goal: a
candidates: a b
vote x3: a | b
vote: b | a
)");
    auto w = parse_witness("partition-1: v1 v4\npartition-2: v2 v3\n", i);
    CHECK(w == Witness{VoterBipartition{{0, 3}, {1, 2}}});
    CHECK(parse_witness(format_witness(w), i) == w);
    CHECK_THROWS_AS(parse_witness("delete: a\n", i), Error);
}

TEST_CASE("instance parsing errors")
{
    CHECK_THROWS_AS(parse_instance("candidates: a b\nvote: a | b\ngoal: a\n"), Error);
    CHECK_THROWS_AS(parse_instance("control: constructive delete-voters\ngoal: a\ncandidates: a b\n"), Error);
    CHECK_THROWS_AS(parse_instance("control: sideways delete-voters\ngoal: a\nlimit: 1\ncandidates: a b\n"), Error);
    CHECK_THROWS_AS(parse_instance("control: constructive delete-voters\ngoal: z\nlimit: 1\ncandidates: a b\n"), Error);
}

TEST_CASE("source problem files round-trip")
{
    HittingSetInstance h{{"b1", "b2", "b3"}, {{0, 1}, {2}}, 2};
    auto back = parse_hitting_set(format_hitting_set(h));
    CHECK(back.elements == h.elements);
    CHECK(back.sets == h.sets);
    CHECK(back.k == h.k);

    X3CInstance x{{"e1", "e2", "e3", "e4", "e5", "e6"}, {{0, 1, 2}, {3, 4, 5}}};
    auto xb = parse_x3c(format_x3c(x));
    CHECK(xb.triples == x.triples);
    CHECK_THROWS_AS(parse_hitting_set("elements: b1\nset: b2\nk: 1\n"), Error);
}
