#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "imago/errors.hpp"
#include "imago/model_io.hpp"
#include "imago/verifier.hpp"
#include "imago/worked_example.hpp"

using namespace imago;

namespace {

Json strip_runtime(const Report& report) {
    Json doc = report_to_json(report);
    doc.erase("runtime_ms");
    return doc;
}

} // namespace

TEST_CASE("target names round-trip") {
    for (TargetId id : all_targets()) {
        auto parsed = parse_target(target_name(id));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == id);
    }
    CHECK(parse_target_list("fact1").size() == kFramePropertyCount);
    CHECK(parse_target_list("all").size() == all_targets().size());
    CHECK(parse_target_list("fact7,thm1").size() == 2);
    CHECK_THROWS_AS(parse_target_list("nonsense"), ParseError);
    CHECK_THROWS_AS(parse_target_list(""), ParseError);
}

TEST_CASE("exhaustive two-atom campaign passes the operator targets") {
    Campaign campaign{Algebra(2)};
    campaign.mode = CampaignMode::Exhaustive;
    campaign.seed = 7;
    campaign.targets = parse_target_list("fact1,fact2,fact3,prop1,centering_decomposition");
    Report report = run_campaign(campaign);
    CHECK(report.all_passed());
    for (const auto& [id, tr] : report.targets) {
        CAPTURE(target_name(id));
        CHECK(tr.checked == 65536);
        CHECK(tr.passed == 65536);
        CHECK(tr.witnesses.empty());
    }
}

TEST_CASE("campaigns are deterministic") {
    Campaign campaign{Algebra(3)};
    campaign.mode = CampaignMode::Sampled;
    campaign.trials = 60;
    campaign.seed = 42;
    campaign.constraints = {FrameProperty::Normality};
    campaign.targets = parse_target_list("fact5,fact6,fact7,thm1");

    Report first = run_campaign(campaign);
    Report second = run_campaign(campaign);
    CHECK(strip_runtime(first) == strip_runtime(second));
    CHECK(first.all_passed());
    for (const auto& [id, tr] : first.targets) {
        CHECK(tr.checked == 60);
    }

    SUBCASE("worker count does not change the report") {
        campaign.workers = 4;
        Report parallel = run_campaign(campaign);
        CHECK(strip_runtime(parallel) == strip_runtime(first));
    }
}

TEST_CASE("exhaustive campaigns split across workers deterministically") {
    Campaign campaign{Algebra(2)};
    campaign.mode = CampaignMode::Exhaustive;
    campaign.seed = 3;
    campaign.targets = parse_target_list("fact3,prop1");
    Report one = run_campaign(campaign);
    campaign.workers = 3;
    Report three = run_campaign(campaign);
    CHECK(strip_runtime(one) == strip_runtime(three));
}

TEST_CASE("budget violations surface as errors") {
    Campaign campaign{Algebra(3)};
    campaign.mode = CampaignMode::Exhaustive;
    campaign.targets = parse_target_list("fact2");
    CHECK_THROWS_AS(run_campaign(campaign), BudgetExceededError);
}

TEST_CASE("equality-only target fails on non-unique tables with witnesses") {
    Campaign campaign{Algebra(3)};
    campaign.mode = CampaignMode::Sampled;
    campaign.trials = 30;
    campaign.seed = 11;
    campaign.constraints = {FrameProperty::Normality};
    campaign.non_unique_only = true;
    campaign.targets = parse_target_list("thm1:equality");
    campaign.witness_cap = 30;

    Report report = run_campaign(campaign);
    const TargetReport* tr = report.find(TargetId{Target::Thm1Equality, FrameProperty::Emptiness});
    REQUIRE(tr != nullptr);
    CHECK(tr->checked == 30);
    CHECK(tr->passed == 0);
    REQUIRE(!tr->witnesses.empty());
    for (const Witness& w : tr->witnesses) {
        CHECK_FALSE(strict_uniqueness_above_bottom(w.selection));
        REQUIRE(w.lambda.has_value());
        // Replay: the stored model still fails the equality target.
        CheckOutcome replay = evaluate_target(TargetId{Target::Thm1Equality,
                                                       FrameProperty::Emptiness},
                                              w.selection, w.prior, &*w.lambda);
        CHECK(replay.failed());
        REQUIRE(w.location.has_value());
        Rat lhs = prob_conditional(w.prior, w.selection, w.location->first, w.location->second);
        Rat rhs = updated_prob(w.prior, *w.lambda, w.location->first, w.location->second);
        CHECK(lhs < rhs);
    }
}

TEST_CASE("bayes recovery target") {
    SUBCASE("exhaustive mode checks the whole grid once") {
        Campaign campaign{Algebra(3)};
        campaign.mode = CampaignMode::Exhaustive;
        campaign.targets = parse_target_list("bayes_recovery");
        Report report = run_campaign(campaign);
        const TargetReport* tr =
            report.find(TargetId{Target::BayesRecovery, FrameProperty::Emptiness});
        REQUIRE(tr != nullptr);
        CHECK(tr->checked == 1);
        CHECK(tr->passed == 1);
    }
    SUBCASE("sampled mode draws fresh priors") {
        Campaign campaign{Algebra(4)};
        campaign.mode = CampaignMode::Sampled;
        campaign.trials = 50;
        campaign.seed = 5;
        campaign.targets = parse_target_list("bayes_recovery");
        Report report = run_campaign(campaign);
        CHECK(report.all_passed());
        const TargetReport* tr =
            report.find(TargetId{Target::BayesRecovery, FrameProperty::Emptiness});
        REQUIRE(tr != nullptr);
        CHECK(tr->checked == 50);
    }
}

TEST_CASE("counterexample mining") {
    SUBCASE("three atoms reproduce the worked example witness") {
        Algebra alg(3);
        auto model = find_theorem1_counterexample(alg, 424242);
        REQUIRE(model.has_value());
        CHECK(model->antecedent == Event{0b110});
        CHECK(model->consequent == Event{0b010});
        CHECK(model->conditional_prob < model->updated_prob_value);
        // The mined table carries the worked example's wide cell.
        CHECK(model->selection.select(Event{0b110}, 0) == Event{0b110});
        CHECK(model->selection.select(Event{0b110}, 1) == Event{0b010});
        CHECK(model->selection.select(Event{0b110}, 2) == Event{0b100});
        // Recheck from scratch.
        CHECK(prob_conditional(model->prior, model->selection, model->antecedent,
                               model->consequent) == model->conditional_prob);
        CHECK(updated_prob(model->prior, model->lambda, model->antecedent, model->consequent) ==
              model->updated_prob_value);
    }

    SUBCASE("two atoms still admit a counterexample") {
        Algebra alg(2);
        auto model = find_theorem1_counterexample(alg, 9);
        REQUIRE(model.has_value());
        CHECK(check_property(model->selection, FrameProperty::Normality));
        CHECK_FALSE(strict_uniqueness_above_bottom(model->selection));
        CHECK(model->conditional_prob < model->updated_prob_value);
    }

    SUBCASE("one atom admits none") {
        Algebra alg(1);
        CHECK_FALSE(find_theorem1_counterexample(alg, 1).has_value());
    }

    SUBCASE("strict gaps exist for every sampled non-unique normal table") {
        Algebra alg(3);
        Rng rng(31);
        unsigned non_unique_seen = 0;
        for (unsigned i = 0; i < 40; ++i) {
            SelectionFunction f =
                sample_selection_function(alg, {FrameProperty::Normality}, rng.next());
            if (strict_uniqueness_above_bottom(f)) {
                continue;
            }
            ++non_unique_seen;
            ProbabilityDist dist = ProbabilityDist::sample(alg, rng);
            DistributionFunction lam = DistributionFunction::random(f, rng);
            auto gap = find_strict_gap(dist, f, lam);
            REQUIRE(gap.has_value());
            CHECK(prob_conditional(dist, f, gap->first, gap->second) <
                  updated_prob(dist, lam, gap->first, gap->second));
        }
        CHECK(non_unique_seen > 0);
    }
}

TEST_CASE("exhaustive non-unique restriction filters the stream") {
    Campaign campaign{Algebra(2)};
    campaign.mode = CampaignMode::Exhaustive;
    campaign.seed = 4;
    campaign.constraints = {FrameProperty::Normality};
    campaign.non_unique_only = true;
    campaign.targets = parse_target_list("thm1:equality");
    campaign.witness_cap = 2;
    Report report = run_campaign(campaign);
    const TargetReport* tr = report.find(TargetId{Target::Thm1Equality, FrameProperty::Emptiness});
    REQUIRE(tr != nullptr);
    // Normal tables minus those with all-singleton nonbottom cells:
    // 3^6 * 4^2 - 2^6 * 4^2 = 11664 - 1024.
    CHECK(tr->checked == 10640);
    CHECK(tr->passed == 0);
    CHECK(tr->witnesses.size() == 2);
}

TEST_CASE("failing targets always carry a witness") {
    Campaign campaign{Algebra(3)};
    campaign.mode = CampaignMode::Sampled;
    campaign.trials = 5;
    campaign.seed = 17;
    campaign.constraints = {FrameProperty::Normality};
    campaign.non_unique_only = true;
    campaign.targets = parse_target_list("thm1:equality");
    campaign.witness_cap = 0;
    Report report = run_campaign(campaign);
    const TargetReport* tr = report.find(TargetId{Target::Thm1Equality, FrameProperty::Emptiness});
    REQUIRE(tr != nullptr);
    CHECK(tr->passed < tr->checked);
    CHECK(tr->witnesses.size() == 1);
}

TEST_CASE("lambda targets skip non-normal tables") {
    Campaign campaign{Algebra(2)};
    campaign.mode = CampaignMode::Exhaustive;
    campaign.seed = 1;
    campaign.targets = parse_target_list("fact6,fact7,thm1");
    Report report = run_campaign(campaign);
    CHECK(report.all_passed());
    const TargetReport* tr = report.find(TargetId{Target::Fact7, FrameProperty::Emptiness});
    REQUIRE(tr != nullptr);
    // Normal tables at two atoms: three nonempty choices in each of the six
    // nonbottom cells, any of four in the two bottom cells.
    CHECK(tr->checked == 11664);
}
