#include <spav/control.hh>
#include <spav/corpus.hh>
#include <spav/error.hh>
#include <spav/io.hh>

#include <algorithm>
#include <optional>

using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

#ifndef SPAV_CORPUS_DIR
#define SPAV_CORPUS_DIR "corpus/v1"
#endif

namespace spav
{
    auto FixtureReport::passed() const -> bool
    {
        return ! results.empty() && std::all_of(results.begin(), results.end(), [](auto & r) { return r.passed; });
    }

    auto default_corpus_dir() -> std::filesystem::path
    {
        return SPAV_CORPUS_DIR;
    }

    namespace
    {
        struct Section
        {
            string name;
            vector<Record> records;
        };

        struct Document
        {
            vector<Record> top;
            vector<Section> checks;
        };

        auto split_documents(const vector<Record> & records) -> vector<Document>
        {
            vector<Document> docs(1);
            for (auto & r : records) {
                if (r.key.empty() && r.values.front() == "---")
                    docs.emplace_back();
                else if (r.key.empty()) {
                    auto marker = r.values.front();
                    auto inner = marker.substr(1, marker.size() - 2);
                    if (! inner.starts_with("check"))
                        throw ParseError(r.line, "unknown section " + marker);
                    auto name = inner.substr(5);
                    while (! name.empty() && name.front() == ' ')
                        name.erase(0, 1);
                    docs.back().checks.push_back({name.empty() ? "line " + std::to_string(r.line) : name, {}});
                }
                else if (docs.back().checks.empty())
                    docs.back().top.push_back(r);
                else
                    docs.back().checks.back().records.push_back(r);
            }
            return docs;
        }

        auto record_text(const vector<Record> & records) -> string
        {
            string out;
            for (auto & r : records) {
                out += r.key;
                if (! r.modifier.empty())
                    out += " " + r.modifier;
                out += ":";
                for (auto & v : r.values)
                    out += " " + v;
                out += "\n";
            }
            return out;
        }

        auto sorted_labels(vector<CandidateId> ids) -> string
        {
            std::sort(ids.begin(), ids.end());
            return "{" + join(ids, ",") + "}";
        }

        auto record_ids(const Record & r) -> vector<CandidateId>
        {
            vector<CandidateId> result;
            for (auto & v : r.values)
                result.emplace_back(v);
            return result;
        }

        /// The election a set of expectations is checked against; empty when a
        /// control action left no candidate standing.
        struct View
        {
            optional<Election> election;
            optional<bool> success;
        };

        class Evaluator
        {
        public:
            explicit Evaluator(FixtureReport & report) :
                _report(report)
            {
            }

            auto run(const Document & doc) -> void
            {
                vector<Record> election_records, expectations;
                for (auto & r : doc.top)
                    (r.key.starts_with("expect-") ? expectations : election_records).push_back(r);
                auto election = parse_election(record_text(election_records)).election;

                string label = "election " + join(election.candidates(), ",");
                check_expectations(label, View{election, std::nullopt}, expectations);

                for (auto & section : doc.checks)
                    run_check(election, section);
            }

        private:
            FixtureReport & _report;

            auto record(const string & check, const Record & r, bool passed, const string & detail) -> void
            {
                string assertion = r.key + ":";
                for (auto & v : r.values)
                    assertion += " " + v;
                _report.results.push_back({check, assertion, passed, passed ? "" : detail});
            }

            auto run_check(const Election & election, const Section & section) -> void
            {
                static const vector<string> instance_keys{"control", "goal", "limit", "spoilers", "pool-vote"};
                static const vector<string> witness_keys{"add", "keep", "delete", "partition-1", "partition-2"};

                vector<Record> instance_records, witness_records, expectations;
                optional<Record> restrict, voters;
                for (auto & r : section.records) {
                    if (r.key.starts_with("expect-"))
                        expectations.push_back(r);
                    else if (std::find(instance_keys.begin(), instance_keys.end(), r.key) != instance_keys.end())
                        instance_records.push_back(r);
                    else if (std::find(witness_keys.begin(), witness_keys.end(), r.key) != witness_keys.end())
                        witness_records.push_back(r);
                    else if (r.key == "restrict")
                        restrict = r;
                    else if (r.key == "voters")
                        voters = r;
                    else
                        throw ParseError(r.line, "unknown check key '" + r.key + "'");
                }

                View view;
                if (instance_records.empty()) {
                    Election e = election;
                    if (voters) {
                        vector<Ballot> chosen;
                        for (auto & v : voters->values) {
                            auto n = detail::parse_count(*voters, string_view(v).substr(v.starts_with("v") ? 1 : 0));
                            if (n < 1 || size_t(n) > election.num_voters())
                                throw ParseError(voters->line, "voter '" + v + "' out of range");
                            chosen.push_back(election.ballots()[size_t(n - 1)]);
                        }
                        e = e.with_ballots(chosen);
                    }
                    if (restrict)
                        e = restrict_election(e, record_ids(*restrict));
                    view.election = e;
                }
                else {
                    auto instance = build_instance(election, instance_records);
                    auto witness = parse_witness(record_text(witness_records), instance);
                    view.election = final_election(instance, witness);
                    view.success = check_witness(instance, witness);
                }
                check_expectations(section.name, view, expectations);
            }

            auto build_instance(const Election & election, const vector<Record> & records) -> ControlInstance
            {
                // The fixture's roster is C ∪ D; a `spoilers:` line marks D.
                vector<Record> header;
                vector<CandidateId> spoilers;
                for (auto & r : records)
                    if (r.key == "spoilers")
                        spoilers = record_ids(r);
                    else
                        header.push_back(r);

                vector<Record> synthetic = header;
                Record candidates{0, "candidates", "", {}};
                for (auto & c : election.candidates())
                    if (std::find(spoilers.begin(), spoilers.end(), c) == spoilers.end())
                        candidates.values.push_back(c.label());
                synthetic.push_back(candidates);
                if (! spoilers.empty()) {
                    Record s{0, "spoilers", "", {}};
                    for (auto & c : spoilers)
                        s.values.push_back(c.label());
                    synthetic.push_back(s);
                }
                // Re-express ballots in roster order C then D so the instance matches its file form.
                for (auto & b : election.ballots())
                    synthetic.push_back(Record{0, "vote", "", tokenize("v: " + format_ballot(b)).front().values});
                auto instance = parse_instance(record_text(synthetic));
                return instance;
            }

            auto check_expectations(const string & check, const View & view, const vector<Record> & expectations) -> void
            {
                auto winner_list = [&]() { return view.election ? winners(*view.election) : vector<CandidateId>{}; };
                size_t vote_index = 0;

                for (auto & r : expectations) {
                    if (r.key == "expect-scores") {
                        if (! view.election) {
                            record(check, r, false, "no final election");
                            continue;
                        }
                        auto table = score_table(*view.election);
                        string observed;
                        bool ok = true;
                        for (auto & v : r.values) {
                            auto eq = v.find('=');
                            if (eq == string::npos)
                                throw ParseError(r.line, "expected <candidate>=<score>, got '" + v + "'");
                            auto c = CandidateId{v.substr(0, eq)};
                            auto expected = detail::parse_count(r, string_view(v).substr(eq + 1));
                            auto got = view.election->contains(c) ? table.score(c) : -1;
                            if (got != expected)
                                ok = false;
                            observed += (observed.empty() ? "" : " ") + c.label() + "=" + std::to_string(got);
                        }
                        record(check, r, ok, "observed " + observed);
                    }
                    else if (r.key == "expect-winners") {
                        auto got = winner_list();
                        record(check, r, sorted_labels(got) == sorted_labels(record_ids(r)), "observed " + sorted_labels(got));
                    }
                    else if (r.key == "expect-unique-winner") {
                        auto got = winner_list();
                        string observed = got.size() == 1 ? got.front().label() : "none";
                        if (r.values.size() != 1)
                            throw ParseError(r.line, "expect-unique-winner takes one candidate or 'none'");
                        record(check, r, observed == r.values.front(), "observed " + observed);
                    }
                    else if (r.key == "expect-candidates") {
                        auto got = view.election ? view.election->candidates() : vector<CandidateId>{};
                        record(check, r, sorted_labels(got) == sorted_labels(record_ids(r)), "observed " + sorted_labels(got));
                    }
                    else if (r.key == "expect-vote") {
                        if (! view.election || vote_index >= view.election->num_voters()) {
                            record(check, r, false, "no ballot at position " + std::to_string(vote_index + 1));
                            ++vote_index;
                            continue;
                        }
                        auto expected = detail::parse_ballot(r, view.election->candidates());
                        auto & got = view.election->ballots()[vote_index++];
                        record(check, r, got == expected, "observed " + format_ballot(got));
                    }
                    else if (r.key == "expect-margin") {
                        if (r.values.size() != 3 || ! view.election)
                            throw ParseError(r.line, "expect-margin takes <x> <y> <margin>");
                        string_view value = r.values[2];
                        bool negative = value.starts_with("-");
                        auto expected = detail::parse_count(r, value.substr(negative ? 1 : 0)) * (negative ? -1 : 1);
                        auto got = preference_margin(*view.election, CandidateId{r.values[0]}, CandidateId{r.values[1]});
                        record(check, r, got == expected, "observed " + std::to_string(got));
                    }
                    else if (r.key == "expect-success") {
                        if (! view.success || r.values.size() != 1)
                            throw ParseError(r.line, "expect-success needs a control check and one of true/false");
                        bool expected = r.values.front() == "true";
                        record(check, r, *view.success == expected, string("observed ") + (*view.success ? "true" : "false"));
                    }
                    else
                        throw ParseError(r.line, "unknown expectation '" + r.key + "'");
                }
            }
        };
    }

    auto run_fixture_text(string_view name, string_view text) -> FixtureReport
    {
        FixtureReport report{string(name), {}};
        Evaluator evaluator(report);
        for (auto & doc : split_documents(tokenize(text)))
            evaluator.run(doc);
        return report;
    }

    auto list_fixtures(const std::filesystem::path & corpus_dir) -> vector<string>
    {
        vector<string> names;
        if (! std::filesystem::is_directory(corpus_dir))
            throw Error("fixture corpus '" + corpus_dir.string() + "' not found");
        for (auto & entry : std::filesystem::directory_iterator(corpus_dir))
            if (entry.path().extension() == ".fixture")
                names.push_back(entry.path().stem().string());
        std::sort(names.begin(), names.end());
        return names;
    }

    auto run_fixture(const string & name, const std::filesystem::path & corpus_dir) -> FixtureReport
    {
        auto path = corpus_dir / (name + ".fixture");
        if (! std::filesystem::exists(path))
            throw Error("unknown fixture '" + name + "'");
        return run_fixture_text(name, read_file(path));
    }
}
