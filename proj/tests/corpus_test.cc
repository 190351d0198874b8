#include <spav/corpus.hh>
#include <spav/error.hh>

#include <doctest.h>

using namespace spav;

TEST_CASE("every bundled fixture passes")
{
    auto names = list_fixtures(default_corpus_dir());
    CHECK(names == std::vector<std::string>{"lemma1-candidates", "lemma2-voters", "prop1-warp"});
    for (auto & n : names) {
        auto report = run_fixture(n, default_corpus_dir());
        CAPTURE(n);
        CHECK(report.results.size() > 5);
        for (auto & r : report.results) {
            CAPTURE(r.check);
            CAPTURE(r.assertion);
            CHECK_MESSAGE(r.passed, r.detail);
        }
    }
}

TEST_CASE("unknown fixtures are errors")
{
    CHECK_THROWS_AS(run_fixture("no-such-fixture", default_corpus_dir()), Error);
}

TEST_CASE("failing expectations are reported, not thrown")
{
    auto report = run_fixture_text("t", "candidates: a b\nvote: a | b\nexpect-unique-winner: b\nexpect-scores: a=1\n");
    REQUIRE(report.results.size() == 2);
    CHECK_FALSE(report.results[0].passed);
    CHECK(report.results[0].detail == "observed a");
    CHECK(report.results[1].passed);
    CHECK_FALSE(report.passed());
}

TEST_CASE("control checks in fixtures")
{
    auto report = run_fixture_text("t", R"(
candidates: a b c
vote x2: a | b c
vote: b | a c
vote: c b | a

[check delete a voter]
control: destructive delete-voters
goal: a
limit: 1
delete: v1
expect-winners: b
expect-success: true
)");
    CHECK(report.passed());
    CHECK_THROWS_AS(run_fixture_text("t", "candidates: a b\n[chek x]\n"), Error);
}
