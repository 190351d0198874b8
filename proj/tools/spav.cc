// spav: score elections, decide control problems, build and verify reductions.

#include <spav/control.hh>
#include <spav/corpus.hh>
#include <spav/error.hh>
#include <spav/io.hh>
#include <spav/reductions.hh>
#include <spav/solvers.hh>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace spav;
using std::string;

namespace
{
    enum class Format
    {
        text,
        machine
    };

    Format format = Format::text;

    auto kv(const string & key, const string & value) -> void
    {
        std::cout << key << ": " << value << "\n";
    }

    auto with_prefix(const string & text, const string & prefix) -> string
    {
        string out;
        size_t start = 0;
        while (start < text.size()) {
            auto end = text.find('\n', start);
            if (end == string::npos)
                end = text.size();
            out += prefix + text.substr(start, end - start) + "\n";
            start = end + 1;
        }
        return out;
    }

    auto load_election(const string & path, bool rewrite) -> Election
    {
        auto parsed = parse_election(read_file(path), rewrite);
        for (auto & w : parsed.warnings)
            kv("warning", w);
        return parsed.election;
    }

    auto score_cmd(const string & path, bool rewrite) -> int
    {
        auto e = load_election(path, rewrite);
        auto table = score_table(e);
        string scores;
        for (auto & c : e.candidates())
            scores += (scores.empty() ? "" : " ") + c.label() + "=" + std::to_string(table.score(c));
        kv("candidates", std::to_string(e.num_candidates()));
        kv("voters", std::to_string(e.num_voters()));
        kv("scores", scores);
        kv("approvals", std::to_string(table.total()));
        return 0;
    }

    auto winner_cmd(const string & path, bool rewrite) -> int
    {
        auto e = load_election(path, rewrite);
        auto w = winners(e);
        kv("winners", join(w));
        kv("unique_winner", w.size() == 1 ? w.front().label() : "none");
        return 0;
    }

    auto print_witness(const Witness & w) -> void
    {
        std::cout << format_witness(w);
    }

    auto solve_cmd(const string & path, const string & method, std::uint64_t budget) -> int
    {
        auto instance = parse_instance(read_file(path));
        bool poly = method == "poly" || (method == "auto" && has_polynomial_decider(instance.type));
        if (poly && ! has_polynomial_decider(instance.type))
            throw Error("no polynomial-time decider for " + type_name(instance.type) + " (it is "
                + complexity_name(classification(instance.type)) + "); use --method brute");

        kv("control", type_name(instance.type));
        kv("complexity", complexity_name(classification(instance.type)));
        Decision d;
        try {
            d = poly ? decide_polynomial(instance) : decide_brute(instance, budget);
        }
        catch (const BudgetExceeded & e) {
            kv("method", method_name(Method::brute_force));
            kv("decision", "undecided");
            kv("reason", e.what());
            return 2;
        }
        kv("method", method_name(d.method));
        kv("decision", d.possible() ? "possible" : "impossible");
        if (d.witness) {
            print_witness(*d.witness);
            auto w = final_winners(instance, *d.witness);
            kv("final_winners", w.empty() ? "none" : join(w));
        }
        kv("nodes", std::to_string(d.stats.nodes));
        kv("work", std::to_string(d.stats.work));
        return 0;
    }

    auto load_source(const string & from, const string & path) -> std::variant<HittingSetInstance, X3CInstance>
    {
        auto text = read_file(path);
        if (from == "hs")
            return parse_hitting_set(text);
        return parse_x3c(text);
    }

    auto reduce_cmd(const string & from, const string & path, const string & target, const string & out) -> int
    {
        auto r = reduce(load_source(from, path), parse_control_type(target));
        string text;
        for (auto & q : r.quantities)
            text += "# " + q.name + ": " + std::to_string(q.actual) + "\n";
        text += format_instance(r.instance);
        if (out.empty() || out == "-")
            std::cout << text;
        else {
            std::ofstream f(out);
            if (! (f << text))
                throw Error("cannot write '" + out + "'");
        }
        return 0;
    }

    auto yes_no(bool b) -> string
    {
        return b ? "yes" : "no";
    }

    auto verify_cmd(const string & from, const string & path, const string & target, std::uint64_t budget) -> int
    {
        auto r = reduce(load_source(from, path), parse_control_type(target));
        auto report = verify_equivalence(r, budget);

        kv("control", type_name(r.instance.type));
        kv("election", std::to_string(r.instance.election.num_candidates()) + " candidates, "
                           + std::to_string(r.instance.election.num_voters()) + " voters");
        auto row = [](const PredictedQuantity & q) {
            kv("quantity", q.name + " predicted=" + std::to_string(q.predicted) + " actual="
                               + std::to_string(q.actual) + (q.holds() ? " ok" : " MISMATCH"));
        };
        for (auto & q : r.quantities)
            row(q);
        for (auto & q : report.witness_quantities)
            row(q);
        kv("source_positive", yes_no(report.oracle_positive));
        kv("control_possible", report.brute_possible ? yes_no(*report.brute_possible) : "undecided");
        kv("witness", report.witness_passes ? (*report.witness_passes ? "pass" : "fail") : "none");
        kv("nodes", std::to_string(report.stats.nodes));
        if (report.undecided()) {
            kv("equivalence", "undecided");
            return 2;
        }
        kv("equivalence", report.passed() ? "pass" : "fail");
        return 0;
    }

    auto demo_cmd(const string & name, const string & dir) -> int
    {
        std::filesystem::path corpus = dir.empty() ? default_corpus_dir() : std::filesystem::path(dir);
        auto names = name.empty() ? list_fixtures(corpus) : std::vector<string>{name};
        bool all = true;
        for (auto & n : names) {
            auto report = run_fixture(n, corpus);
            size_t passed = 0;
            for (auto & a : report.results) {
                passed += a.passed;
                if (! a.passed || format == Format::text)
                    kv(a.passed ? "ok" : "FAIL", n + " [" + a.check + "] " + a.assertion
                                                     + (a.detail.empty() ? "" : " (" + a.detail + ")"));
            }
            kv("fixture", n + " " + (report.passed() ? "pass" : "fail") + " " + std::to_string(passed) + "/"
                              + std::to_string(report.results.size()));
            all = all && report.passed();
        }
        return all ? 0 : 1;
    }

    auto check_witness_cmd(const string & instance_path, const string & witness_path) -> int
    {
        auto instance = parse_instance(read_file(instance_path));
        auto witness = parse_witness(read_file(witness_path), instance);
        auto final = final_election(instance, witness);
        kv("control", type_name(instance.type));
        kv("final_candidates", final ? join(final->candidates()) : "none");
        if (final && format == Format::text)
            std::cout << with_prefix(format_election(*final), "  ");
        auto w = final ? winners(*final) : std::vector<CandidateId>{};
        kv("final_winners", w.empty() ? "none" : join(w));
        kv("success", check_witness(instance, witness) ? "true" : "false");
        return 0;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"Sincere-strategy preference-based approval voting: winners and electoral control"};
    app.require_subcommand(1);
    app.fallthrough();

    bool rewrite = false;
    string format_name = "text";
    app.add_flag("--rewrite", rewrite, "Rewrite inadmissible ballots on load instead of warning");
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "machine"}));

    string input, second, method = "auto", from = "hs", target, out, corpus;
    std::uint64_t budget = default_budget;

    auto score = app.add_subcommand("score", "Approval score of every candidate");
    score->add_option("election", input)->required()->check(CLI::ExistingFile);

    auto winner = app.add_subcommand("winner", "Winners of an election");
    winner->add_option("election", input)->required()->check(CLI::ExistingFile);

    auto solve = app.add_subcommand("solve", "Decide a control instance");
    solve->add_option("instance", input)->required()->check(CLI::ExistingFile);
    solve->add_option("--method", method, "Decision procedure")->check(CLI::IsMember({"brute", "poly", "auto"}));
    solve->add_option("--budget", budget, "Maximum witnesses examined by brute force");

    auto reduce_sub = app.add_subcommand("reduce", "Build the control instance a source instance reduces to");
    reduce_sub->add_option("source", input)->required()->check(CLI::ExistingFile);
    reduce_sub->add_option("--from", from, "Source problem")->check(CLI::IsMember({"hs", "x3c"}));
    reduce_sub->add_option("--target", target, "Target control type, e.g. destructive-delete-candidates")->required();
    reduce_sub->add_option("-o,--output", out, "Output file (default stdout)");

    auto verify = app.add_subcommand("verify", "Check a reduction's equivalence on one source instance");
    verify->add_option("source", input)->required()->check(CLI::ExistingFile);
    verify->add_option("--from", from, "Source problem")->check(CLI::IsMember({"hs", "x3c"}));
    verify->add_option("--target", target, "Target control type")->required();
    verify->add_option("--budget", budget, "Maximum witnesses examined by brute force");

    auto demo = app.add_subcommand("demo", "Run the bundled example fixtures");
    demo->add_option("name", input, "Fixture name (default: all)");
    demo->add_option("--corpus", corpus, "Fixture directory");

    auto check = app.add_subcommand("check-witness", "Evaluate a chair's action on an instance");
    check->add_option("instance", input)->required()->check(CLI::ExistingFile);
    check->add_option("witness", second)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        std::cerr << app.help();
        return 1;
    }
    format = format_name == "machine" ? Format::machine : Format::text;

    try {
        if (score->parsed())
            return score_cmd(input, rewrite);
        if (winner->parsed())
            return winner_cmd(input, rewrite);
        if (solve->parsed())
            return solve_cmd(input, method, budget);
        if (reduce_sub->parsed())
            return reduce_cmd(from, input, target, out);
        if (verify->parsed())
            return verify_cmd(from, input, target, budget);
        if (demo->parsed())
            return demo_cmd(input, corpus);
        if (check->parsed())
            return check_witness_cmd(input, second);
    }
    catch (const BudgetExceeded & e) {
        std::cerr << "spav: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception & e) {
        std::cerr << "spav: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
