#include <spav/error.hh>
#include <spav/io.hh>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

using std::optional;
using std::size_t;
using std::string;
using std::string_view;
using std::vector;

namespace spav
{
    namespace
    {
        auto trim(string_view s) -> string_view
        {
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }

        auto split_words(string_view s) -> vector<string>
        {
            string spaced;
            for (char ch : s) {
                if (ch == '|')
                    spaced += " | ";
                else
                    spaced += ch;
            }
            std::istringstream in(spaced);
            vector<string> words;
            string w;
            while (in >> w)
                words.push_back(w);
            return words;
        }

        auto to_ids(const Record & r) -> vector<CandidateId>
        {
            vector<CandidateId> result;
            for (auto & v : r.values) {
                if (v == "|")
                    throw ParseError(r.line, "unexpected '|' in candidate list");
                result.emplace_back(v);
            }
            return result;
        }

        auto single_value(const Record & r) -> const string &
        {
            if (r.values.size() != 1)
                throw ParseError(r.line, "'" + r.key + "' takes exactly one value");
            return r.values.front();
        }

        auto reject_modifier(const Record & r) -> void
        {
            if (! r.modifier.empty())
                throw ParseError(r.line, "unexpected '" + r.modifier + "' after '" + r.key + "'");
        }

        struct BallotLines
        {
            optional<Record> candidates;
            vector<Record> votes;
        };

        auto build_election(const BallotLines & lines, const vector<CandidateId> & roster, bool rewrite) -> ParsedElection
        {
            vector<Ballot> ballots;
            vector<string> warnings;
            for (auto & r : lines.votes) {
                auto b = detail::parse_ballot(r, roster);
                auto copies = detail::multiplicity(r);
                if (! b.admissible()) {
                    if (rewrite)
                        b = rewrite_ballot(b, roster.size());
                    else
                        warnings.push_back("line " + std::to_string(r.line) + ": inadmissible ballot '" + format_ballot(b) + "'");
                }
                for (long i = 0; i < copies; ++i)
                    ballots.push_back(b);
            }
            try {
                return ParsedElection{Election{roster, std::move(ballots)}, std::move(warnings)};
            }
            catch (const ParseError &) {
                throw;
            }
            catch (const Error & e) {
                throw ParseError(lines.candidates ? lines.candidates->line : 1, e.what());
            }
        }

        auto parse_voter_ref(const Record & r, const string & token, char prefix, size_t bound) -> size_t
        {
            string_view digits = token;
            if (! digits.empty() && (digits.front() == prefix || (prefix == 'p' && digits.front() == 'w')))
                digits.remove_prefix(1);
            auto n = detail::parse_count(r, digits);
            if (n < 1 || size_t(n) > bound)
                throw ParseError(r.line, "voter '" + token + "' out of range 1.." + std::to_string(bound));
            return size_t(n - 1);
        }

        auto voter_refs(const Record & r, char prefix, size_t bound) -> vector<size_t>
        {
            vector<size_t> result;
            for (auto & v : r.values)
                result.push_back(parse_voter_ref(r, v, prefix, bound));
            return result;
        }
    }

    auto tokenize(string_view text) -> vector<Record>
    {
        vector<Record> records;
        size_t line_no = 0;
        size_t pos = 0;
        while (pos <= text.size()) {
            auto end = text.find('\n', pos);
            if (end == string_view::npos)
                end = text.size();
            auto line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;

            if (auto hash = line.find('#'); hash != string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            Record r;
            r.line = line_no;
            if (line == "---" || (line.front() == '[' && line.back() == ']')) {
                r.values.emplace_back(line);
                records.push_back(std::move(r));
                continue;
            }

            auto colon = line.find(':');
            if (colon == string_view::npos)
                throw ParseError(line_no, "expected 'key: value'");
            auto head = split_words(line.substr(0, colon));
            if (head.empty() || head.size() > 2)
                throw ParseError(line_no, "malformed key '" + string(trim(line.substr(0, colon))) + "'");
            r.key = head[0];
            if (head.size() == 2)
                r.modifier = head[1];
            r.values = split_words(line.substr(colon + 1));
            records.push_back(std::move(r));
        }
        return records;
    }

    namespace detail
    {
        auto parse_count(const Record & r, string_view token) -> long
        {
            long value = 0;
            auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc{} || p != token.data() + token.size() || value < 0)
                throw ParseError(r.line, "expected a nonnegative integer, got '" + string(token) + "'");
            return value;
        }

        auto multiplicity(const Record & r) -> long
        {
            if (r.modifier.empty())
                return 1;
            if (r.modifier.size() < 2 || r.modifier.front() != 'x')
                throw ParseError(r.line, "multiplicity must look like x<N>, got '" + r.modifier + "'");
            auto n = parse_count(r, string_view(r.modifier).substr(1));
            if (n < 1)
                throw ParseError(r.line, "multiplicity must be positive");
            return n;
        }

        auto parse_ballot(const Record & r, const vector<CandidateId> & roster) -> Ballot
        {
            Ballot b;
            size_t bars = 0;
            for (auto & v : r.values) {
                if (v == "|") {
                    ++bars;
                    b.approval_count = b.ranking.size();
                }
                else
                    b.ranking.emplace_back(v);
            }
            if (bars != 1)
                throw ParseError(r.line, "ballot needs exactly one '|' approval line");

            std::set<CandidateId> seen;
            for (auto & c : b.ranking) {
                if (std::find(roster.begin(), roster.end(), c) == roster.end())
                    throw ParseError(r.line, "ballot ranks unknown candidate '" + c.label() + "'");
                if (! seen.insert(c).second)
                    throw ParseError(r.line, "ballot ranks '" + c.label() + "' twice");
            }
            if (b.ranking.size() != roster.size())
                throw ParseError(r.line, "ballot must rank all " + std::to_string(roster.size()) + " candidates");
            return b;
        }
    }

    auto parse_election(string_view text, bool rewrite) -> ParsedElection
    {
        BallotLines lines;
        for (auto & r : tokenize(text)) {
            if (r.key == "candidates") {
                reject_modifier(r);
                if (lines.candidates)
                    throw ParseError(r.line, "duplicate 'candidates' line");
                lines.candidates = r;
            }
            else if (r.key == "vote") {
                if (! lines.candidates)
                    throw ParseError(r.line, "'vote' before 'candidates'");
                lines.votes.push_back(r);
            }
            else
                throw ParseError(r.line, r.key.empty() ? "unexpected section marker" : "unknown key '" + r.key + "'");
        }
        if (! lines.candidates)
            throw ParseError(1, "missing 'candidates' line");
        auto roster = to_ids(*lines.candidates);
        if (roster.empty())
            throw ParseError(lines.candidates->line, "empty candidate set");
        return build_election(lines, roster, rewrite);
    }

    auto parse_instance(string_view text) -> ControlInstance
    {
        BallotLines lines;
        optional<Record> control, goal, limit, spoilers;
        vector<Record> pool_lines;

        auto once = [](optional<Record> & slot, const Record & r) {
            if (slot)
                throw ParseError(r.line, "duplicate '" + r.key + "' line");
            slot = r;
        };

        for (auto & r : tokenize(text)) {
            if (r.key == "candidates") {
                reject_modifier(r);
                once(lines.candidates, r);
            }
            else if (r.key == "vote")
                lines.votes.push_back(r);
            else if (r.key == "control")
                once(control, r);
            else if (r.key == "goal")
                once(goal, r);
            else if (r.key == "limit")
                once(limit, r);
            else if (r.key == "spoilers")
                once(spoilers, r);
            else if (r.key == "pool-vote")
                pool_lines.push_back(r);
            else
                throw ParseError(r.line, r.key.empty() ? "unexpected section marker" : "unknown key '" + r.key + "'");
        }

        if (! lines.candidates)
            throw ParseError(1, "missing 'candidates' line");
        if (! control)
            throw ParseError(1, "missing 'control' line");
        if (! goal)
            throw ParseError(1, "missing 'goal' line");

        if (control->values.size() != 2)
            throw ParseError(control->line, "expected 'control: <constructive|destructive> <action>'");
        ControlType type{};
        try {
            type.goal = parse_goal(control->values[0]);
            auto [action, rule] = parse_action(control->values[1]);
            type.action = action;
            type.tie_rule = rule;
        }
        catch (const Error & e) {
            throw ParseError(control->line, e.what());
        }

        auto qualified = to_ids(*lines.candidates);
        vector<CandidateId> d = spoilers ? to_ids(*spoilers) : vector<CandidateId>{};
        auto roster = qualified;
        roster.insert(roster.end(), d.begin(), d.end());
        if (qualified.empty())
            throw ParseError(lines.candidates->line, "empty candidate set");

        size_t bound = 0;
        if (limit) {
            bound = size_t(detail::parse_count(*limit, single_value(*limit)));
        }
        else if (has_limit(type.action) && type.action != Action::add_candidates_unlimited)
            throw ParseError(control->line, "action " + control->values[1] + " needs a 'limit' line");

        auto parsed = build_election(lines, roster, false);

        vector<Ballot> pool;
        for (auto & r : pool_lines) {
            auto b = detail::parse_ballot(r, qualified);
            for (long i = 0, n = detail::multiplicity(r); i < n; ++i)
                pool.push_back(b);
        }

        ControlInstance instance{parsed.election, CandidateId{single_value(*goal)}, type, bound, d, pool};
        try {
            instance.validate();
        }
        catch (const Error & e) {
            throw ParseError(goal->line, e.what());
        }
        return instance;
    }

    auto parse_witness(string_view text, const ControlInstance & instance) -> Witness
    {
        optional<Record> add, del, first, second;
        for (auto & r : tokenize(text)) {
            auto slot = &add;
            if (r.key == "add" || r.key == "keep")
                slot = &add;
            else if (r.key == "delete")
                slot = &del;
            else if (r.key == "partition-1")
                slot = &first;
            else if (r.key == "partition-2")
                slot = &second;
            else
                throw ParseError(r.line, "unknown witness key '" + r.key + "'");
            if (*slot)
                throw ParseError(r.line, "duplicate '" + r.key + "' line");
            reject_modifier(r);
            *slot = r;
        }

        auto action = instance.type.action;
        auto require = [&](const optional<Record> & r, const char * key) -> const Record & {
            if (! r)
                throw ParseError(1, "witness for " + action_name(action, instance.type.tie_rule) + " needs a '" + key + "' line");
            return *r;
        };
        auto forbid = [&](std::initializer_list<const optional<Record> *> unused) {
            for (auto r : unused)
                if (*r)
                    throw ParseError((*r)->line, "'" + (*r)->key + "' does not apply to " + action_name(action, instance.type.tie_rule));
        };

        switch (action) {
        case Action::add_candidates_unlimited:
        case Action::add_candidates_limited:
            forbid({&del, &first, &second});
            return CandidateSubset{to_ids(require(add, "add"))};
        case Action::delete_candidates:
            forbid({&add, &first, &second});
            return DeletedCandidates{to_ids(require(del, "delete"))};
        case Action::partition_candidates:
        case Action::runoff_partition_candidates:
            forbid({&add, &del});
            return CandidateBipartition{to_ids(require(first, "partition-1")), to_ids(require(second, "partition-2"))};
        case Action::add_voters:
            forbid({&del, &first, &second});
            return VoterSubset{voter_refs(require(add, "add"), 'p', instance.pool.size())};
        case Action::delete_voters:
            forbid({&add, &first, &second});
            return DeletedVoters{voter_refs(require(del, "delete"), 'v', instance.election.num_voters())};
        case Action::partition_voters: {
            forbid({&add, &del});
            auto n = instance.election.num_voters();
            return VoterBipartition{voter_refs(require(first, "partition-1"), 'v', n), voter_refs(require(second, "partition-2"), 'v', n)};
        }
        }
        throw Error("unknown action");
    }

    auto parse_hitting_set(string_view text) -> HittingSetInstance
    {
        HittingSetInstance h;
        bool have_elements = false, have_k = false;
        vector<Record> sets;
        size_t k_line = 1;
        for (auto & r : tokenize(text)) {
            reject_modifier(r);
            if (r.key == "elements") {
                if (have_elements)
                    throw ParseError(r.line, "duplicate 'elements' line");
                h.elements = r.values;
                have_elements = true;
            }
            else if (r.key == "set")
                sets.push_back(r);
            else if (r.key == "k") {
                if (have_k)
                    throw ParseError(r.line, "duplicate 'k' line");
                h.k = size_t(detail::parse_count(r, single_value(r)));
                have_k = true;
                k_line = r.line;
            }
            else
                throw ParseError(r.line, "unknown key '" + r.key + "'");
        }
        if (! have_elements)
            throw ParseError(1, "missing 'elements' line");
        if (! have_k)
            throw ParseError(1, "missing 'k' line");
        for (auto & r : sets) {
            vector<size_t> s;
            for (auto & v : r.values) {
                auto it = std::find(h.elements.begin(), h.elements.end(), v);
                if (it == h.elements.end())
                    throw ParseError(r.line, "unknown element '" + v + "'");
                s.push_back(size_t(it - h.elements.begin()));
            }
            std::sort(s.begin(), s.end());
            h.sets.push_back(s);
        }
        try {
            h.validate();
        }
        catch (const Error & e) {
            throw ParseError(k_line, e.what());
        }
        return h;
    }

    auto parse_x3c(string_view text) -> X3CInstance
    {
        X3CInstance x;
        bool have_elements = false;
        vector<Record> triples;
        for (auto & r : tokenize(text)) {
            reject_modifier(r);
            if (r.key == "elements") {
                if (have_elements)
                    throw ParseError(r.line, "duplicate 'elements' line");
                x.elements = r.values;
                have_elements = true;
            }
            else if (r.key == "triple")
                triples.push_back(r);
            else
                throw ParseError(r.line, "unknown key '" + r.key + "'");
        }
        if (! have_elements)
            throw ParseError(1, "missing 'elements' line");
        for (auto & r : triples) {
            if (r.values.size() != 3)
                throw ParseError(r.line, "a triple has exactly three elements");
            std::array<size_t, 3> t{};
            for (size_t i = 0; i < 3; ++i) {
                auto it = std::find(x.elements.begin(), x.elements.end(), r.values[i]);
                if (it == x.elements.end())
                    throw ParseError(r.line, "unknown element '" + r.values[i] + "'");
                t[i] = size_t(it - x.elements.begin());
            }
            std::sort(t.begin(), t.end());
            x.triples.push_back(t);
        }
        try {
            x.validate();
        }
        catch (const Error & e) {
            throw ParseError(1, e.what());
        }
        return x;
    }

    auto join(const vector<CandidateId> & ids, string_view separator) -> string
    {
        string out;
        for (size_t i = 0; i < ids.size(); ++i) {
            if (i)
                out += separator;
            out += ids[i].label();
        }
        return out;
    }

    auto format_ballot(const Ballot & b) -> string
    {
        string out;
        for (size_t i = 0; i <= b.ranking.size(); ++i) {
            if (i == b.approval_count)
                out += out.empty() ? "|" : " |";
            if (i < b.ranking.size())
                out += (out.empty() ? "" : " ") + b.ranking[i].label();
        }
        return out;
    }

    namespace
    {
        auto format_votes(const char * key, const vector<Ballot> & ballots) -> string
        {
            string out;
            for (size_t i = 0; i < ballots.size();) {
                size_t j = i;
                while (j < ballots.size() && ballots[j] == ballots[i])
                    ++j;
                out += key;
                if (j - i > 1)
                    out += " x" + std::to_string(j - i);
                out += ": " + format_ballot(ballots[i]) + "\n";
                i = j;
            }
            return out;
        }

        auto indices_line(const char * key, char prefix, const vector<size_t> & items) -> string
        {
            string out = key;
            out += ":";
            for (auto i : items)
                out += string(" ") + prefix + std::to_string(i + 1);
            return out + "\n";
        }

        auto ids_line(const char * key, const vector<CandidateId> & items) -> string
        {
            auto body = join(items);
            return string(key) + ":" + (body.empty() ? "" : " " + body) + "\n";
        }
    }

    auto format_election(const Election & e) -> string
    {
        return ids_line("candidates", e.candidates()) + format_votes("vote", e.ballots());
    }

    auto format_instance(const ControlInstance & instance) -> string
    {
        string out = "control: " + goal_name(instance.type.goal) + " " + action_name(instance.type.action, instance.type.tie_rule) + "\n";
        out += "goal: " + instance.goal_candidate.label() + "\n";
        if (has_limit(instance.type.action) && instance.type.action != Action::add_candidates_unlimited)
            out += "limit: " + std::to_string(instance.limit) + "\n";
        out += ids_line("candidates", instance.qualified());
        if (! instance.spoilers.empty())
            out += ids_line("spoilers", instance.spoilers);
        out += format_votes("vote", instance.election.ballots());
        out += format_votes("pool-vote", instance.pool);
        return out;
    }

    auto format_witness(const Witness & w) -> string
    {
        return std::visit(
            [](auto & v) -> string {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, CandidateSubset>)
                    return ids_line("add", v.members);
                else if constexpr (std::is_same_v<T, DeletedCandidates>)
                    return ids_line("delete", v.members);
                else if constexpr (std::is_same_v<T, VoterSubset>)
                    return indices_line("add", 'p', v.members);
                else if constexpr (std::is_same_v<T, DeletedVoters>)
                    return indices_line("delete", 'v', v.members);
                else if constexpr (std::is_same_v<T, CandidateBipartition>)
                    return ids_line("partition-1", v.first) + ids_line("partition-2", v.second);
                else
                    return indices_line("partition-1", 'v', v.first) + indices_line("partition-2", 'v', v.second);
            },
            w);
    }

    auto format_hitting_set(const HittingSetInstance & h) -> string
    {
        string out = "elements:";
        for (auto & e : h.elements)
            out += " " + e;
        out += "\n";
        for (auto & s : h.sets) {
            out += "set:";
            for (auto e : s)
                out += " " + h.elements[e];
            out += "\n";
        }
        return out + "k: " + std::to_string(h.k) + "\n";
    }

    auto format_x3c(const X3CInstance & x) -> string
    {
        string out = "elements:";
        for (auto & e : x.elements)
            out += " " + e;
        out += "\n";
        for (auto & t : x.triples)
            out += "triple: " + x.elements[t[0]] + " " + x.elements[t[1]] + " " + x.elements[t[2]] + "\n";
        return out;
    }

    auto read_file(const std::filesystem::path & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw Error("cannot read '" + path.string() + "'");
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }
}
