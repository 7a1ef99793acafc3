#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "imago/belief.hpp"
#include "imago/selection.hpp"
#include "imago/update.hpp"

namespace imago {

/// Checkable claims. Fact1Row is parametrized by the property row; the rest
/// are single claims over a model (selection function, prior, lambda).
enum class Target {
    Fact1Row,
    Fact2,
    Fact3,
    Fact5,
    Prop1,
    Fact6,
    Fact7,
    Thm1,
    Thm1Equality,
    CenteringDecomposition,
    BayesRecovery,
};

struct TargetId {
    Target kind = Target::Fact2;
    FrameProperty row = FrameProperty::Emptiness; // used by Fact1Row only

    friend bool operator==(const TargetId&, const TargetId&) = default;
};

std::string target_name(TargetId id);
std::optional<TargetId> parse_target(const std::string& name);
std::vector<TargetId> all_targets();

/// Comma-separated list; "all" expands to every target, "fact1" and
/// "fact1:all" to the ten rows. Throws ParseError on unknown names.
std::vector<TargetId> parse_target_list(const std::string& spec);

enum class CampaignMode { Exhaustive, Sampled };

struct Campaign {
    explicit Campaign(Algebra alg) : algebra(std::move(alg)) {}

    Algebra algebra;
    CampaignMode mode = CampaignMode::Exhaustive;
    std::vector<TargetId> targets;
    std::uint64_t trials = 0; // sampled mode, >= 1
    std::uint64_t seed = 0;
    PropertySet constraints;
    /// Restrict instances to tables that are non-unique above bottom:
    /// sampled mode resamples, exhaustive mode filters the stream.
    bool non_unique_only = false;
    std::uint64_t budget = kDefaultEnumerationBudget;
    unsigned workers = 1;
    unsigned witness_cap = 4;
};

/// A failing instance. Self-contained: re-running the target on the stored
/// model reproduces the failure bit-exactly.
struct Witness {
    std::uint64_t instance = 0;
    SelectionFunction selection;
    ProbabilityDist prior;
    std::optional<DistributionFunction> lambda;
    std::optional<std::pair<Event, Event>> location;
    std::string detail;
};

struct TargetReport {
    std::uint64_t checked = 0;
    std::uint64_t passed = 0;
    std::vector<Witness> witnesses;
};

struct Report {
    std::uint64_t seed = 0;
    std::string mode_label = "exhaustive";
    std::vector<std::string> atoms;
    std::vector<std::pair<TargetId, TargetReport>> targets;
    std::uint64_t runtime_ms = 0;

    TargetReport& target(TargetId id);
    const TargetReport* find(TargetId id) const;
    bool all_passed() const;
};

/// Runs every requested target over the campaign's instance stream:
/// exhaustive mode enumerates all selection functions under the constraints
/// and budget with one fixed seeded prior, sampled mode draws `trials`
/// seeded (f, P, lambda) instances. Deterministic for a fixed seed under any
/// worker count; witnesses are kept in instance order up to witness_cap.
Report run_campaign(const Campaign& campaign);

enum class CheckStatus { Passed, Failed, Skipped };

struct CheckOutcome {
    CheckStatus status = CheckStatus::Skipped;
    std::optional<std::pair<Event, Event>> location;
    std::string detail;

    bool passed() const { return status == CheckStatus::Passed; }
    bool failed() const { return status == CheckStatus::Failed; }
};

/// One target on one model. lambda may be null; targets that need one are
/// then Skipped, as are lambda targets on a non-normal table (their
/// preconditions fail). BayesRecovery requires the whole-antecedent table
/// and derives its own lambda from the prior.
CheckOutcome evaluate_target(TargetId id, const SelectionFunction& f, const ProbabilityDist& dist,
                             const DistributionFunction* lambda);

/// A complete strict-inequality certificate: a normal selection function
/// with a multi-atom cell, a prior, a lambda, and the least (a, b) pair at
/// which the updated probability strictly exceeds the conditional's.
struct CounterexampleModel {
    SelectionFunction selection;
    ProbabilityDist prior;
    DistributionFunction lambda;
    Event antecedent;
    Event consequent;
    Rat conditional_prob;
    Rat updated_prob_value;
};

/// Mines a strict-inequality model over the given algebra: the centered
/// least-world table with one widened cell, a seeded prior and uniform
/// lambda. Returns nullopt when the algebra admits none (single atom: every
/// normal table is unique above bottom).
std::optional<CounterexampleModel> find_theorem1_counterexample(const Algebra& algebra,
                                                                std::uint64_t seed);

/// Least (a, b) with a strict gap for this model, scanning antecedents then
/// consequents in ascending bitmask order; nullopt when update and
/// conditional agree everywhere.
std::optional<std::pair<Event, Event>> find_strict_gap(const ProbabilityDist& dist,
                                                       const SelectionFunction& f,
                                                       const DistributionFunction& lam);

} // namespace imago
