#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spav
{
    struct AssertionResult
    {
        std::string check;
        std::string assertion;
        bool passed = false;
        /// What was observed, when it differs from the expectation.
        std::string detail;
    };

    struct FixtureReport
    {
        std::string name;
        std::vector<AssertionResult> results;

        auto passed() const -> bool;
    };

    /// Evaluates a fixture document. A fixture holds one or more elections separated
    /// by `---`; each election may carry `expect-*` lines and `[check <name>]`
    /// sections. A check either views the election (optional `restrict:` and
    /// `voters:` lines) or runs a control action (instance header lines plus a
    /// witness) and compares the result with its `expect-*` lines.
    auto run_fixture_text(std::string_view name, std::string_view text) -> FixtureReport;

    /// Fixture files are `<name>.fixture` inside `corpus_dir`.
    auto list_fixtures(const std::filesystem::path & corpus_dir) -> std::vector<std::string>;
    auto run_fixture(const std::string & name, const std::filesystem::path & corpus_dir) -> FixtureReport;

    /// Corpus directory compiled into the build.
    auto default_corpus_dir() -> std::filesystem::path;
}
