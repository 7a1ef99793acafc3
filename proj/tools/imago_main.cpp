#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "imago/errors.hpp"
#include "imago/model_io.hpp"
#include "imago/worked_example.hpp"

namespace {

using namespace imago;

std::uint64_t enumeration_budget_from_env() {
    const char* raw = std::getenv("IMAGO_BUDGET");
    if (raw == nullptr || *raw == '\0') {
        return kDefaultEnumerationBudget;
    }
    try {
        return std::stoull(raw);
    } catch (const std::exception&) {
        throw ParseError(std::string("IMAGO_BUDGET is not an unsigned integer: '") + raw + "'");
    }
}

PropertySet parse_constraints(const std::string& spec) {
    PropertySet set;
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string item =
            spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) {
            auto p = parse_property(item);
            if (!p) {
                throw ParseError("unknown frame property '" + item + "'");
            }
            set.insert(*p);
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return set;
}

int run_check(const std::string& path, const std::string& targets_spec,
              const std::string& out_path) {
    Model model = load_model_file(path);
    std::vector<TargetId> targets;
    if (targets_spec == "auto") {
        // Every claim the model can answer; update claims only when a lambda
        // exists or can be derived. Explicit --targets stay strict instead.
        targets = parse_target_list("fact1,fact2,fact3,fact5,prop1");
        if (model.lambda || check_property(model.selection, FrameProperty::Normality)) {
            for (TargetId id : parse_target_list("fact6,fact7,thm1")) {
                targets.push_back(id);
            }
        }
    } else {
        targets = parse_target_list(targets_spec);
    }

    // A single model has no instance sweep, so the equality question is the
    // meaningful per-model reading of thm1.
    std::optional<DistributionFunction> fallback_lambda;
    const DistributionFunction* lambda = model.lambda ? &*model.lambda : nullptr;

    Report report;
    report.mode_label = "check";
    report.atoms = model.algebra.atom_names();

    bool any_failed = false;
    for (TargetId id : targets) {
        TargetId effective = id;
        if (id.kind == Target::Thm1) {
            effective.kind = Target::Thm1Equality;
        }
        const bool needs_lambda = effective.kind == Target::Fact6 ||
                                  effective.kind == Target::Fact7 ||
                                  effective.kind == Target::Thm1Equality;
        if (needs_lambda && lambda == nullptr && !fallback_lambda) {
            if (!check_property(model.selection, FrameProperty::Normality)) {
                throw ValidationError("target '" + target_name(id) +
                                      "' needs a lambda, and none exists: the selection "
                                      "function is not normal");
            }
            fallback_lambda = DistributionFunction::uniform(model.selection);
        }
        const DistributionFunction* use =
            lambda != nullptr ? lambda : (fallback_lambda ? &*fallback_lambda : nullptr);
        CheckOutcome outcome = evaluate_target(effective, model.selection, model.prior, use);
        if (outcome.status == CheckStatus::Skipped) {
            throw ValidationError("target '" + target_name(id) +
                                  "' is not applicable to this model: " + outcome.detail);
        }
        TargetReport& tr = report.target(id);
        ++tr.checked;
        if (outcome.passed()) {
            ++tr.passed;
            std::cout << "[PASS] " << target_name(id) << "\n";
        } else {
            any_failed = true;
            std::cout << "[FAIL] " << target_name(id)
                      << (outcome.detail.empty() ? "" : ": " + outcome.detail) << "\n";
            tr.witnesses.push_back(Witness{
                0, model.selection, model.prior,
                use != nullptr ? std::make_optional(*use) : std::nullopt, outcome.location,
                outcome.detail});
        }
    }
    write_report(report_to_json(report), out_path);
    return any_failed ? 1 : 0;
}

int run_campaign_cmd(unsigned atoms, const std::string& mode, std::uint64_t trials,
                     std::uint64_t seed, const std::string& constraints_spec,
                     const std::string& targets_spec, bool non_unique, unsigned workers,
                     const std::string& out_path) {
    Campaign campaign{Algebra(atoms)};
    if (mode == "exhaustive") {
        campaign.mode = CampaignMode::Exhaustive;
    } else if (mode == "sampled") {
        campaign.mode = CampaignMode::Sampled;
    } else {
        throw ParseError("unknown mode '" + mode + "', expected exhaustive or sampled");
    }
    campaign.trials = trials;
    campaign.seed = seed;
    campaign.constraints = parse_constraints(constraints_spec);
    campaign.targets = parse_target_list(targets_spec);
    campaign.non_unique_only = non_unique;
    campaign.workers = workers;
    campaign.budget = enumeration_budget_from_env();

    Report report = run_campaign(campaign);
    for (const auto& [id, tr] : report.targets) {
        std::cout << (tr.passed == tr.checked ? "[PASS] " : "[FAIL] ") << target_name(id) << ": "
                  << tr.passed << "/" << tr.checked << " instances\n";
    }
    write_report(report_to_json(report), out_path);
    return report.all_passed() ? 0 : 1;
}

int run_demo(const std::string& out_path, const std::string& lambda_weight, bool lewisify) {
    WorkedExampleOptions options;
    options.lewisify = lewisify;
    if (!lambda_weight.empty()) {
        options.lambda_weight = parse_rat(lambda_weight);
    }
    WorkedExample ex = make_worked_example(options);
    const Algebra& alg = ex.algebra;
    const Event a = ex.antecedent;
    const Event b = ex.consequent;

    std::cout << "three-world update example\n";
    std::cout << "  atoms:";
    for (const auto& name : alg.atom_names()) {
        std::cout << " " << name;
    }
    std::cout << "\n  prior:";
    for (unsigned i = 0; i < alg.atom_count(); ++i) {
        std::cout << " P(" << alg.atom_name(i) << ")=" << rat_str(ex.prior.atom_weight(i));
    }
    std::cout << "\n  antecedent a = " << alg.event_label(a)
              << ", consequent b = " << alg.event_label(b) << "\n";
    std::cout << "  selection at a:";
    for (unsigned i = 0; i < alg.atom_count(); ++i) {
        std::cout << " f(a," << alg.atom_name(i) << ")=" << alg.event_label(ex.selection.select(a, i));
    }
    std::cout << "\n  lambda at (a," << alg.atom_name(0) << "):";
    {
        const Event selected = ex.selection.select(a, 0);
        const std::vector<Rat>& ws = ex.lambda.cell(a, 0);
        unsigned slot = 0;
        for (unsigned beta = 0; beta < alg.atom_count(); ++beta) {
            if (contains(selected, beta)) {
                std::cout << " " << alg.atom_name(beta) << "->" << rat_str(ws[slot++]);
            }
        }
    }

    const Event cond_event = conditional(ex.selection, a, b);
    const Rat p_cond = prob_conditional(ex.prior, ex.selection, a, b);
    const MassDistribution mass = imaged_mass(ex.prior, ex.selection, a);
    const Rat bel = imaged_belief(ex.prior, ex.selection, a, b);
    const Rat updated = updated_prob(ex.prior, ex.lambda, a, b);
    const Rat gap = updated - p_cond;

    std::cout << "\n  conditional event a |> b = " << alg.event_label(cond_event) << "\n";
    std::cout << "  mass at a:";
    for (const auto& [event, m] : mass.entries) {
        std::cout << " " << alg.event_label(event) << "->" << rat_str(m);
    }
    std::cout << "\n";
    std::cout << "  P(a |> b) = " << rat_str(p_cond) << "\n";
    std::cout << "  Bel_a(b) = " << rat_str(bel) << "\n";
    std::cout << "  P_a^lambda(b) = " << rat_str(updated) << "\n";
    std::cout << "  gap = " << rat_str(gap) << "\n";

    bool equality_at_a = true;
    for (std::uint32_t x = 0; x < alg.event_count(); ++x) {
        if (updated_prob(ex.prior, ex.lambda, a, Event{x}) !=
            prob_conditional(ex.prior, ex.selection, a, Event{x})) {
            equality_at_a = false;
            break;
        }
    }
    if (gap > 0) {
        std::cout << "  strict: P(a |> b) = " << rat_str(p_cond) << " < " << rat_str(updated)
                  << " = P_a^lambda(b)\n";
    } else if (equality_at_a) {
        std::cout << "  equality holds at antecedent " << alg.event_label(a)
                  << " for every consequent\n";
    }

    if (!out_path.empty()) {
        Json doc;
        doc["schema_version"] = kReportSchemaVersion;
        doc["mode"] = "demo";
        doc["values"] = {
            {"conditional_event", event_to_names(alg, cond_event)},
            {"prob_conditional", rat_str(p_cond)},
            {"imaged_belief", rat_str(bel)},
            {"updated_prob", rat_str(updated)},
            {"gap", rat_str(gap)},
            {"strict_inequality", gap > 0},
            {"equality_at_antecedent", equality_at_a},
        };
        doc["model"] =
            model_to_json(Model{alg, ex.selection, ex.prior, std::make_optional(ex.lambda)});
        write_report(doc, out_path);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"selection-function conditionals, imaged beliefs and lambda updates"};
    app.set_version_flag("--version", "imago 0.1.0");
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "run checks against a model file");
    std::string check_path;
    std::string check_targets = "auto";
    std::string check_out;
    check->add_option("path", check_path, "model file")->required();
    check->add_option("--targets", check_targets,
                      "comma-separated targets; default: every applicable claim");
    check->add_option("--out", check_out, "report path (stdout if omitted)");

    auto* campaign = app.add_subcommand("campaign", "verify targets over a model space");
    unsigned atoms = 2;
    std::string mode = "exhaustive";
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    std::string constraints;
    std::string targets = "all";
    bool non_unique = false;
    unsigned workers = 1;
    std::string campaign_out;
    campaign->add_option("--atoms", atoms, "atom count")->required();
    campaign->add_option("--mode", mode, "exhaustive | sampled");
    campaign->add_option("--trials", trials, "sampled-mode instance count");
    campaign->add_option("--seed", seed, "sampling seed");
    campaign->add_option("--constraints", constraints, "frame properties the instances satisfy");
    campaign->add_option("--targets", targets, "comma-separated targets, or 'all'");
    campaign->add_flag("--non-unique", non_unique,
                       "restrict instances to tables that are non-unique above bottom");
    campaign->add_option("--workers", workers, "parallel workers");
    campaign->add_option("--out", campaign_out, "report path (stdout if omitted)");

    auto* demo = app.add_subcommand("demo", "print the built-in three-world update example");
    std::string demo_out;
    std::string demo_lambda_weight;
    bool lewisify = false;
    demo->add_option("--out", demo_out, "report path");
    demo->add_option("--lambda-weight", demo_lambda_weight,
                     "weight the wide cell gives its first atom, e.g. 1/4");
    demo->add_flag("--lewisify", lewisify, "shrink the wide cell to a singleton");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // keep 0 for --help/--version, fold flag misuse into invalid input
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) {
            return run_check(check_path, check_targets, check_out);
        }
        if (campaign->parsed()) {
            return run_campaign_cmd(atoms, mode, trials, seed, constraints, targets, non_unique,
                                    workers, campaign_out);
        }
        if (demo->parsed()) {
            return run_demo(demo_out, demo_lambda_weight, lewisify);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
