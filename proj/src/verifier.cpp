#include "imago/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <functional>
#include <thread>

#include "imago/conditional.hpp"
#include "imago/errors.hpp"
#include "imago/worked_example.hpp"

namespace imago {

namespace {

struct TargetNameEntry {
    Target kind;
    const char* name;
};

constexpr TargetNameEntry kPlainTargets[] = {
    {Target::Fact2, "fact2"},
    {Target::Fact3, "fact3"},
    {Target::Fact5, "fact5"},
    {Target::Prop1, "prop1"},
    {Target::Fact6, "fact6"},
    {Target::Fact7, "fact7"},
    {Target::Thm1, "thm1"},
    {Target::Thm1Equality, "thm1:equality"},
    {Target::CenteringDecomposition, "centering_decomposition"},
    {Target::BayesRecovery, "bayes_recovery"},
};

} // namespace

std::string target_name(TargetId id) {
    if (id.kind == Target::Fact1Row) {
        return std::string("fact1:") + property_name(id.row);
    }
    for (const auto& entry : kPlainTargets) {
        if (entry.kind == id.kind) {
            return entry.name;
        }
    }
    return "unknown";
}

std::optional<TargetId> parse_target(const std::string& name) {
    for (const auto& entry : kPlainTargets) {
        if (name == entry.name) {
            return TargetId{entry.kind, FrameProperty::Emptiness};
        }
    }
    constexpr const char* prefix = "fact1:";
    if (name.rfind(prefix, 0) == 0) {
        if (auto row = parse_property(name.substr(6))) {
            return TargetId{Target::Fact1Row, *row};
        }
    }
    return std::nullopt;
}

std::vector<TargetId> all_targets() {
    std::vector<TargetId> ids;
    for (FrameProperty p : all_frame_properties()) {
        ids.push_back(TargetId{Target::Fact1Row, p});
    }
    for (const auto& entry : kPlainTargets) {
        if (entry.kind != Target::Thm1Equality) {
            ids.push_back(TargetId{entry.kind, FrameProperty::Emptiness});
        }
    }
    return ids;
}

std::vector<TargetId> parse_target_list(const std::string& spec) {
    std::vector<TargetId> ids;
    auto push_unique = [&](TargetId id) {
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
            ids.push_back(id);
        }
    };
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string item = spec.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) {
            if (item == "all") {
                for (TargetId id : all_targets()) {
                    push_unique(id);
                }
            } else if (item == "fact1" || item == "fact1:all") {
                for (FrameProperty p : all_frame_properties()) {
                    push_unique(TargetId{Target::Fact1Row, p});
                }
            } else if (auto id = parse_target(item)) {
                push_unique(*id);
            } else {
                throw ParseError("unknown target '" + item + "'");
            }
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (ids.empty()) {
        throw ParseError("empty target list");
    }
    return ids;
}

TargetReport& Report::target(TargetId id) {
    for (auto& [tid, report] : targets) {
        if (tid == id) {
            return report;
        }
    }
    targets.emplace_back(id, TargetReport{});
    return targets.back().second;
}

const TargetReport* Report::find(TargetId id) const {
    for (const auto& [tid, report] : targets) {
        if (tid == id) {
            return &report;
        }
    }
    return nullptr;
}

bool Report::all_passed() const {
    for (const auto& [tid, report] : targets) {
        if (report.passed != report.checked) {
            return false;
        }
    }
    return true;
}

namespace {

std::string pair_label(const Algebra& alg, Event a, Event b) {
    return "(" + alg.event_label(a) + ", " + alg.event_label(b) + ")";
}

CheckOutcome outcome_pass() { return CheckOutcome{CheckStatus::Passed, std::nullopt, ""}; }

CheckOutcome outcome_fail(std::optional<std::pair<Event, Event>> loc, std::string detail) {
    return CheckOutcome{CheckStatus::Failed, std::move(loc), std::move(detail)};
}

CheckOutcome outcome_skip(std::string why) {
    return CheckOutcome{CheckStatus::Skipped, std::nullopt, std::move(why)};
}

CheckOutcome check_fact2(const SelectionFunction& f, const ProbabilityDist& dist) {
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
        for (std::uint32_t b = 0; b < alg.event_count(); ++b) {
            Event via_conditional = conditional(f, Event{a}, Event{b});
            Event via_box = box(f, Event{a}, Event{b});
            if (via_conditional != via_box) {
                return outcome_fail(std::make_pair(Event{a}, Event{b}),
                                    "conditional and box disagree at " +
                                        pair_label(alg, Event{a}, Event{b}));
            }
            if (dist.prob(via_conditional) != dist.prob(via_box)) {
                return outcome_fail(std::make_pair(Event{a}, Event{b}),
                                    "P(a |> b) and P(box) disagree at " +
                                        pair_label(alg, Event{a}, Event{b}));
            }
        }
    }
    return outcome_pass();
}

CheckOutcome check_fact3(const SelectionFunction& f) {
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
        bool all_equal = true;
        Event first_diff{0};
        for (std::uint32_t x = 0; x < alg.event_count(); ++x) {
            if (box(f, Event{a}, Event{x}) != diamond(f, Event{a}, Event{x})) {
                all_equal = false;
                first_diff = Event{x};
                break;
            }
        }
        const bool singleton_cells = strict_uniqueness_at(f, Event{a});
        if (all_equal != singleton_cells) {
            return outcome_fail(
                std::make_pair(Event{a}, first_diff),
                "box/diamond agreement and singleton cells diverge at antecedent " +
                    alg.event_label(Event{a}));
        }
    }
    return outcome_pass();
}

CheckOutcome check_fact5(const SelectionFunction& f, const ProbabilityDist& dist) {
    const Algebra& alg = f.algebra();
    const std::uint32_t events = alg.event_count();
    std::vector<Rat> bel(events);
    for (std::uint32_t a = 0; a < events; ++a) {
        const MassDistribution mass = imaged_mass(dist, f, Event{a});
        for (std::uint32_t b = 0; b < events; ++b) {
            bel[b] = belief_from_mass(mass, Event{b});
            Rat direct = prob_conditional(dist, f, Event{a}, Event{b});
            Rat via_box = dist.prob(box(f, Event{a}, Event{b}));
            if (direct != bel[b] || direct != via_box) {
                return outcome_fail(std::make_pair(Event{a}, Event{b}),
                                    "conditional probability, box probability and imaged belief "
                                    "diverge at " + pair_label(alg, Event{a}, Event{b}));
            }
        }
        // Superadditivity and monotonicity of the imaged belief at this index.
        for (std::uint32_t x = 0; x < events; ++x) {
            for (std::uint32_t y = 0; y < events; ++y) {
                if (bel[x | y] + bel[x & y] < bel[x] + bel[y]) {
                    return outcome_fail(std::make_pair(Event{x}, Event{y}),
                                        "superadditivity fails at antecedent " +
                                            alg.event_label(Event{a}));
                }
                if (leq(Event{x}, Event{y}) && bel[x] > bel[y]) {
                    return outcome_fail(std::make_pair(Event{x}, Event{y}),
                                        "monotonicity fails at antecedent " +
                                            alg.event_label(Event{a}));
                }
            }
        }
        if (bel[alg.full_mask()] != 1) {
            return outcome_fail(std::make_pair(Event{a}, alg.top()),
                                "imaged belief of top is not 1 at antecedent " +
                                    alg.event_label(Event{a}));
        }
    }
    return outcome_pass();
}

CheckOutcome check_prop1(const SelectionFunction& f, const ProbabilityDist& dist) {
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
        Prop1Report report = proposition1_report(dist, f, Event{a});
        if (!report.consistent()) {
            return outcome_fail(
                report.witness ? report.witness
                               : std::make_optional(std::make_pair(Event{a}, Event{a})),
                "equivalence flags diverge at antecedent " + alg.event_label(Event{a}) +
                    ": additive=" + std::to_string(report.additive) +
                    " unique=" + std::to_string(report.unique) +
                    " functional=" + std::to_string(report.functional) +
                    " box_eq_diamond=" + std::to_string(report.box_eq_diamond));
        }
    }
    return outcome_pass();
}

CheckOutcome check_fact6(const SelectionFunction& f, const ProbabilityDist& dist,
                         const DistributionFunction& lam) {
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        const std::vector<Rat> atoms = updated_atom_dist(dist, lam, Event{a});
        Rat total = 0;
        for (const Rat& w : atoms) {
            if (w < 0) {
                return outcome_fail(std::make_pair(Event{a}, Event{a}),
                                    "negative updated mass at antecedent " +
                                        alg.event_label(Event{a}));
            }
            total += w;
        }
        if (total != 1) {
            return outcome_fail(std::make_pair(Event{a}, alg.top()),
                                "updated distribution sums to " + rat_str(total) +
                                    " at antecedent " + alg.event_label(Event{a}));
        }
    }
    return outcome_pass();
}

CheckOutcome check_fact7(const SelectionFunction& f, const ProbabilityDist& dist,
                         const DistributionFunction& lam) {
    Fact7Result result = fact7_check(dist, f, lam);
    if (!result.holds) {
        // Find the least violating pair for the witness.
        const Algebra& alg = f.algebra();
        for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
            for (std::uint32_t b = 0; b < alg.event_count(); ++b) {
                if (lambda_gap(dist, f, lam, Event{a}, Event{b}) < 0) {
                    return outcome_fail(std::make_pair(Event{a}, Event{b}),
                                        "updated probability falls below the conditional's at " +
                                            pair_label(alg, Event{a}, Event{b}));
                }
            }
        }
        return outcome_fail(std::nullopt, "inequality violated");
    }
    return outcome_pass();
}

CheckOutcome check_thm1(const SelectionFunction& f, const ProbabilityDist& dist,
                        const DistributionFunction& lam, bool equality_only) {
    Theorem1Result result = theorem1_check(dist, f, lam);
    if (equality_only) {
        if (!result.equality_forall) {
            return outcome_fail(result.witness,
                                "updated and conditional probabilities differ" +
                                    (result.witness
                                         ? " at " + pair_label(f.algebra(), result.witness->first,
                                                               result.witness->second)
                                         : std::string()));
        }
        return outcome_pass();
    }
    if (!result.agree()) {
        return outcome_fail(result.witness, std::string("equality-for-all is ") +
                                                (result.equality_forall ? "true" : "false") +
                                                " but uniqueness above bottom is " +
                                                (result.uniqueness ? "true" : "false"));
    }
    return outcome_pass();
}

CheckOutcome check_centering_decomposition(const SelectionFunction& f) {
    const bool whole = check_property(f, FrameProperty::Centering);
    const bool split = check_property(f, FrameProperty::Centering1) &&
                       check_property(f, FrameProperty::Centering2);
    if (whole != split) {
        return outcome_fail(std::nullopt, "centering does not match centering1 + centering2");
    }
    return outcome_pass();
}

CheckOutcome check_bayes_recovery(const SelectionFunction& f, const ProbabilityDist& dist) {
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
            if (f.select(Event{a}, alpha) != Event{a}) {
                return outcome_skip("bayes recovery needs the whole-antecedent table");
            }
        }
    }
    DistributionFunction lam = DistributionFunction::bayes(dist, f);
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        const Rat pa = dist.prob(Event{a});
        for (std::uint32_t b = 0; b < alg.event_count(); ++b) {
            Rat updated = updated_prob(dist, lam, Event{a}, Event{b});
            Rat conditioned = dist.prob(meet(Event{a}, Event{b})) / pa;
            if (updated != conditioned) {
                return outcome_fail(std::make_pair(Event{a}, Event{b}),
                                    "updated probability " + rat_str(updated) +
                                        " differs from conditional probability " +
                                        rat_str(conditioned) + " at " +
                                        pair_label(alg, Event{a}, Event{b}));
            }
        }
    }
    return outcome_pass();
}

bool target_needs_lambda(Target kind) {
    return kind == Target::Fact6 || kind == Target::Fact7 || kind == Target::Thm1 ||
           kind == Target::Thm1Equality;
}

} // namespace

CheckOutcome evaluate_target(TargetId id, const SelectionFunction& f, const ProbabilityDist& dist,
                             const DistributionFunction* lambda) {
    switch (id.kind) {
    case Target::Fact1Row: {
        Fact1Row row = check_fact1_row(f, id.row);
        if (row.lhs != row.rhs) {
            return outcome_fail(std::nullopt,
                                std::string("algebraic identity and structural check disagree "
                                            "on row ") + property_name(id.row) +
                                    ": identity=" + std::to_string(row.lhs) +
                                    " structural=" + std::to_string(row.rhs));
        }
        return outcome_pass();
    }
    case Target::Fact2:
        return check_fact2(f, dist);
    case Target::Fact3:
        return check_fact3(f);
    case Target::Fact5:
        return check_fact5(f, dist);
    case Target::Prop1:
        return check_prop1(f, dist);
    case Target::Fact6:
    case Target::Fact7:
    case Target::Thm1:
    case Target::Thm1Equality: {
        if (!check_property(f, FrameProperty::Normality)) {
            return outcome_skip("selection function is not normal");
        }
        if (lambda == nullptr) {
            return outcome_skip("no lambda supplied");
        }
        if (id.kind == Target::Fact6) {
            return check_fact6(f, dist, *lambda);
        }
        if (id.kind == Target::Fact7) {
            return check_fact7(f, dist, *lambda);
        }
        return check_thm1(f, dist, *lambda, id.kind == Target::Thm1Equality);
    }
    case Target::CenteringDecomposition:
        return check_centering_decomposition(f);
    case Target::BayesRecovery:
        return check_bayes_recovery(f, dist);
    }
    return outcome_skip("unknown target");
}

namespace {

struct InstanceResult {
    CheckStatus status = CheckStatus::Skipped;
    std::optional<std::pair<Event, Event>> location;
    std::string detail;
    const DistributionFunction* failing_lambda = nullptr;
};

/// Lambda targets run against both supplied tables; the first failure wins.
InstanceResult evaluate_instance(TargetId id, const SelectionFunction& f,
                                 const ProbabilityDist& dist, const DistributionFunction* uniform,
                                 const DistributionFunction* random_lam) {
    InstanceResult result;
    if (!target_needs_lambda(id.kind)) {
        CheckOutcome outcome = evaluate_target(id, f, dist, nullptr);
        result.status = outcome.status;
        result.location = outcome.location;
        result.detail = outcome.detail;
        return result;
    }
    const DistributionFunction* lambdas[2] = {uniform, random_lam};
    const char* labels[2] = {"uniform lambda", "random lambda"};
    result.status = CheckStatus::Skipped;
    for (int i = 0; i < 2; ++i) {
        if (lambdas[i] == nullptr) {
            continue;
        }
        CheckOutcome outcome = evaluate_target(id, f, dist, lambdas[i]);
        if (outcome.status == CheckStatus::Failed) {
            result.status = CheckStatus::Failed;
            result.location = outcome.location;
            result.detail = outcome.detail + " (" + labels[i] + ")";
            result.failing_lambda = lambdas[i];
            return result;
        }
        if (outcome.status == CheckStatus::Passed) {
            result.status = CheckStatus::Passed;
        } else if (result.status != CheckStatus::Passed) {
            result.detail = outcome.detail;
        }
    }
    return result;
}

struct WorkerState {
    std::vector<std::pair<TargetId, TargetReport>> targets;

    TargetReport& target(TargetId id) {
        for (auto& [tid, report] : targets) {
            if (tid == id) {
                return report;
            }
        }
        targets.emplace_back(id, TargetReport{});
        return targets.back().second;
    }
};

void record(WorkerState& state, TargetId id, const InstanceResult& result, std::uint64_t instance,
            const SelectionFunction& f, const ProbabilityDist& dist, unsigned witness_cap) {
    if (result.status == CheckStatus::Skipped) {
        return;
    }
    TargetReport& report = state.target(id);
    ++report.checked;
    if (result.status == CheckStatus::Passed) {
        ++report.passed;
        return;
    }
    // A failing target always carries at least one witness.
    if (report.witnesses.size() < std::max(1u, witness_cap)) {
        Witness w{instance, f, dist,
                  result.failing_lambda ? std::make_optional(*result.failing_lambda)
                                        : std::nullopt,
                  result.location, result.detail};
        report.witnesses.push_back(std::move(w));
    }
}

/// One enumerated/sampled instance against every requested target.
void run_instance(WorkerState& state, const Campaign& campaign, std::uint64_t instance,
                  const SelectionFunction& f, const ProbabilityDist& dist) {
    std::optional<DistributionFunction> uniform;
    std::optional<DistributionFunction> random_lam;
    bool lambda_wanted = false;
    for (TargetId id : campaign.targets) {
        if (target_needs_lambda(id.kind)) {
            lambda_wanted = true;
        }
    }
    if (lambda_wanted && check_property(f, FrameProperty::Normality)) {
        uniform = DistributionFunction::uniform(f);
        Rng lambda_rng(Rng::mix(campaign.seed ^ 0x6c6d626461ull, instance));
        random_lam = DistributionFunction::random(f, lambda_rng);
    }
    for (TargetId id : campaign.targets) {
        if (id.kind == Target::BayesRecovery) {
            continue; // has its own instance stream
        }
        InstanceResult result =
            evaluate_instance(id, f, dist, uniform ? &*uniform : nullptr,
                              random_lam ? &*random_lam : nullptr);
        record(state, id, result, instance, f, dist, campaign.witness_cap);
    }
}

void merge_reports(Report& report, std::vector<WorkerState>& workers, unsigned witness_cap) {
    witness_cap = std::max(1u, witness_cap);
    for (WorkerState& state : workers) {
        for (auto& [tid, partial] : state.targets) {
            TargetReport& total = report.target(tid);
            total.checked += partial.checked;
            total.passed += partial.passed;
            for (Witness& w : partial.witnesses) {
                total.witnesses.push_back(std::move(w));
            }
        }
    }
    for (auto& [tid, target] : report.targets) {
        std::stable_sort(target.witnesses.begin(), target.witnesses.end(),
                         [](const Witness& a, const Witness& b) { return a.instance < b.instance; });
        if (target.witnesses.size() > witness_cap) {
            target.witnesses.erase(target.witnesses.begin() + witness_cap,
                                   target.witnesses.end());
        }
    }
}

void run_parallel(std::uint64_t total, unsigned workers,
                  const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body) {
    if (workers <= 1 || total <= 1) {
        body(0, 0, total);
        return;
    }
    const unsigned count = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(count);
    const std::uint64_t chunk = (total + count - 1) / count;
    for (unsigned w = 0; w < count; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min(total, lo + chunk);
        threads.emplace_back([&, w, lo, hi] {
            try {
                body(w, lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

void run_bayes_target(Report& report, const Campaign& campaign, const ProbabilityDist& fixed) {
    TargetId id{Target::BayesRecovery, FrameProperty::Emptiness};
    TargetReport& target = report.target(id);
    const SelectionFunction f = antecedent_selection(campaign.algebra);
    if (campaign.mode == CampaignMode::Exhaustive) {
        CheckOutcome outcome = evaluate_target(id, f, fixed, nullptr);
        ++target.checked;
        if (outcome.passed()) {
            ++target.passed;
        } else if (target.witnesses.size() < std::max(1u, campaign.witness_cap)) {
            target.witnesses.push_back(
                Witness{0, f, fixed, std::nullopt, outcome.location, outcome.detail});
        }
        return;
    }
    const Algebra& alg = campaign.algebra;
    DistributionFunction lam = DistributionFunction::bayes(fixed, f);
    for (std::uint64_t t = 0; t < campaign.trials; ++t) {
        Rng rng(Rng::mix(campaign.seed ^ 0xba43e5ull, t));
        ProbabilityDist dist = ProbabilityDist::sample(alg, rng);
        Event a{static_cast<std::uint32_t>(1 + rng.below(alg.event_count() - 1))};
        Event b{static_cast<std::uint32_t>(rng.below(alg.event_count()))};
        DistributionFunction trial_lam = DistributionFunction::bayes(dist, f);
        Rat updated = updated_prob(dist, trial_lam, a, b);
        Rat conditioned = dist.prob(meet(a, b)) / dist.prob(a);
        ++target.checked;
        if (updated == conditioned) {
            ++target.passed;
        } else if (target.witnesses.size() < std::max(1u, campaign.witness_cap)) {
            target.witnesses.push_back(Witness{t, f, dist, std::make_optional(trial_lam),
                                               std::make_pair(a, b),
                                               "updated probability differs from P(a and b)/P(a)"});
        }
    }
}

SelectionFunction sample_campaign_function(const Campaign& campaign, std::uint64_t trial) {
    const std::uint64_t base = Rng::mix(campaign.seed, trial);
    SelectionFunction f =
        sample_selection_function(campaign.algebra, campaign.constraints, base);
    if (!campaign.non_unique_only) {
        return f;
    }
    for (unsigned attempt = 1; attempt <= 1000; ++attempt) {
        if (!strict_uniqueness_above_bottom(f)) {
            return f;
        }
        f = sample_selection_function(campaign.algebra, campaign.constraints,
                                      Rng::mix(base, attempt));
    }
    throw RetryCapExhaustedError("could not sample a non-unique table in 1000 attempts");
}

} // namespace

Report run_campaign(const Campaign& campaign) {
    const auto started = std::chrono::steady_clock::now();
    if (campaign.mode == CampaignMode::Sampled && campaign.trials == 0) {
        throw DomainError("sampled campaign needs trials >= 1");
    }
    Report report;
    report.seed = campaign.seed;
    report.mode_label = campaign.mode == CampaignMode::Exhaustive ? "exhaustive" : "sampled";
    report.atoms = campaign.algebra.atom_names();
    for (TargetId id : campaign.targets) {
        report.target(id); // pin target order
    }

    const bool wants_bayes =
        std::any_of(campaign.targets.begin(), campaign.targets.end(),
                    [](TargetId id) { return id.kind == Target::BayesRecovery; });
    const bool has_instance_targets =
        std::any_of(campaign.targets.begin(), campaign.targets.end(),
                    [](TargetId id) { return id.kind != Target::BayesRecovery; });

    Rng prior_rng(Rng::mix(campaign.seed ^ 0x9d107ull, 0));
    const ProbabilityDist fixed_prior = ProbabilityDist::sample(campaign.algebra, prior_rng);

    if (has_instance_targets) {
        if (campaign.mode == CampaignMode::Exhaustive) {
            // Budget check up front; each worker then owns a candidate range.
            SelectionFunctionEnumerator probe(campaign.algebra, campaign.constraints,
                                              campaign.budget);
            const std::uint64_t space = probe.space_size();
            std::vector<WorkerState> states(std::max(1u, campaign.workers));
            run_parallel(space, campaign.workers,
                         [&](unsigned worker, std::uint64_t lo, std::uint64_t hi) {
                             SelectionFunctionEnumerator stream(campaign.algebra,
                                                                campaign.constraints,
                                                                campaign.budget);
                             stream.restrict_range(lo, hi);
                             std::uint64_t index = 0;
                             while (auto f = stream.next(&index)) {
                                 if (campaign.non_unique_only &&
                                     strict_uniqueness_above_bottom(*f)) {
                                     continue;
                                 }
                                 run_instance(states[worker], campaign, index, *f, fixed_prior);
                             }
                         });
            merge_reports(report, states, campaign.witness_cap);
        } else {
            std::vector<WorkerState> states(std::max(1u, campaign.workers));
            run_parallel(campaign.trials, campaign.workers,
                         [&](unsigned worker, std::uint64_t lo, std::uint64_t hi) {
                             for (std::uint64_t t = lo; t < hi; ++t) {
                                 SelectionFunction f = sample_campaign_function(campaign, t);
                                 Rng prng(Rng::mix(campaign.seed ^ 0x9d107ull, t + 1));
                                 ProbabilityDist dist =
                                     ProbabilityDist::sample(campaign.algebra, prng);
                                 run_instance(states[worker], campaign, t, f, dist);
                             }
                         });
            merge_reports(report, states, campaign.witness_cap);
        }
    }

    if (wants_bayes) {
        run_bayes_target(report, campaign, fixed_prior);
    }

    report.runtime_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              started)
            .count());
    return report;
}

std::optional<std::pair<Event, Event>> find_strict_gap(const ProbabilityDist& dist,
                                                       const SelectionFunction& f,
                                                       const DistributionFunction& lam) {
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        const std::vector<Rat> atoms = updated_atom_dist(dist, lam, Event{a});
        for (std::uint32_t b = 0; b < alg.event_count(); ++b) {
            Rat upd = 0;
            for (unsigned beta = 0; beta < alg.atom_count(); ++beta) {
                if (contains(Event{b}, beta)) {
                    upd += atoms[beta];
                }
            }
            if (upd > prob_conditional(dist, f, Event{a}, Event{b})) {
                return std::make_pair(Event{a}, Event{b});
            }
        }
    }
    return std::nullopt;
}

std::optional<CounterexampleModel> find_theorem1_counterexample(const Algebra& algebra,
                                                                std::uint64_t seed) {
    if (algebra.atom_count() < 2) {
        // Every normal table over one atom selects the single world
        // everywhere above bottom; equality always holds.
        return std::nullopt;
    }
    SelectionFunction f = centered_least_selection(algebra);
    const Event wide = algebra.atom_count() >= 3
                           ? Event{algebra.full_mask() & ~std::uint32_t{1}}
                           : algebra.top();
    f.set(wide, 0, wide);

    Rng rng(seed);
    ProbabilityDist prior = ProbabilityDist::sample(algebra, rng);
    DistributionFunction lam = DistributionFunction::uniform(f);
    auto gap = find_strict_gap(prior, f, lam);
    if (!gap) {
        return std::nullopt;
    }
    Rat conditional_prob = prob_conditional(prior, f, gap->first, gap->second);
    Rat updated = updated_prob(prior, lam, gap->first, gap->second);
    return CounterexampleModel{std::move(f), std::move(prior), std::move(lam),
                               gap->first, gap->second, std::move(conditional_prob),
                               std::move(updated)};
}

} // namespace imago
