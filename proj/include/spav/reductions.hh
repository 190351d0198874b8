#pragma once

#include <spav/control.hh>
#include <spav/solvers.hh>

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace spav
{
    /// Elements B (canonical order), a nonempty collection of nonempty subsets
    /// given as element positions, and the size bound k.
    struct HittingSetInstance
    {
        std::vector<std::string> elements;
        std::vector<std::vector<std::size_t>> sets;
        std::size_t k = 1;

        auto m() const -> std::size_t { return elements.size(); }
        auto n() const -> std::size_t { return sets.size(); }

        auto validate() const -> void;

        /// n(k+1) + 1 <= m - k, the extra condition for the partition-of-voters reduction.
        auto restricted() const -> bool;
    };

    /// 3m elements (m > 1) and a collection of three-element subsets.
    struct X3CInstance
    {
        std::vector<std::string> elements;
        std::vector<std::array<std::size_t, 3>> triples;

        auto m() const -> std::size_t { return elements.size() / 3; }
        auto n() const -> std::size_t { return triples.size(); }

        auto validate() const -> void;
    };

    /// Element positions of a hitting set, or set positions of an exact cover.
    using Certificate = std::vector<std::size_t>;

    /// A minimum-size hitting set (first in size-then-lexicographic order), or nothing
    /// if every hitting set has more than k elements.
    auto solve_hitting_set(const HittingSetInstance & h) -> std::optional<Certificate>;

    /// The lexicographically first exact cover, or nothing.
    auto solve_x3c(const X3CInstance & x) -> std::optional<Certificate>;

    enum class ReductionKind
    {
        /// Hitting set to the {c, w} ∪ B election with four voter groups.
        hitting_set_election,
        /// Hitting set to constructive deleting candidates over B ∪ {w}.
        delete_candidates,
        /// X3C to constructive partition of voters, ties-eliminate.
        pv_te
    };

    struct PredictedQuantity
    {
        std::string name;
        long predicted = 0;
        long actual = 0;

        auto holds() const -> bool { return predicted == actual; }
    };

    struct ReductionOutput
    {
        ReductionKind kind;
        ControlInstance instance;
        /// Closed-form predictions next to the values recomputed from the built election.
        std::vector<PredictedQuantity> quantities;
        std::variant<HittingSetInstance, X3CInstance> source;

        auto quantities_hold() const -> bool;

        /// The chair's action a source certificate translates to, when the
        /// reduction gives one explicitly.
        auto witness_for(const Certificate & certificate) const -> std::optional<Witness>;
    };

    /// Control types the hitting-set construction is used for, with w as constructive goal and
    /// c as destructive goal.
    auto hitting_set_targets() -> std::vector<ControlType>;

    auto build_hitting_set_election(const HittingSetInstance & h, const ControlType & target) -> ReductionOutput;
    auto build_delete_candidates(const HittingSetInstance & h) -> ReductionOutput;

    /// Pads the collection to n >= m by repeating the first triple.
    auto build_pv_te(const X3CInstance & x) -> ReductionOutput;

    /// Picks the reduction for a source problem and a target control type.
    auto reduce(const std::variant<HittingSetInstance, X3CInstance> & source, const ControlType & target) -> ReductionOutput;

    struct EquivalenceReport
    {
        bool oracle_positive = false;
        /// Brute-force verdict; empty when the budget ran out.
        std::optional<bool> brute_possible;
        /// Whether the certificate's witness passes; empty if there is no certificate or no explicit witness.
        std::optional<bool> witness_passes;
        bool quantities_hold = false;
        /// Score identities that only hold after applying the certificate's witness.
        std::vector<PredictedQuantity> witness_quantities;
        SearchStats stats;

        auto undecided() const -> bool { return ! brute_possible.has_value(); }
        auto passed() const -> bool;
    };

    auto verify_equivalence(const ReductionOutput & r, const std::optional<Certificate> & oracle,
        std::uint64_t budget = default_budget) -> EquivalenceReport;

    /// Runs the matching oracle on the reduction's source and verifies.
    auto verify_equivalence(const ReductionOutput & r, std::uint64_t budget = default_budget) -> EquivalenceReport;
}
