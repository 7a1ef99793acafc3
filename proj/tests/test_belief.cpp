#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "imago/belief.hpp"
#include "imago/errors.hpp"
#include "imago/worked_example.hpp"

using namespace imago;

namespace {

ProbabilityDist quarters() {
    Algebra alg(3);
    return ProbabilityDist(alg, {make_rat(1, 2), make_rat(1, 4), make_rat(1, 4)});
}

} // namespace

TEST_CASE("atom sums") {
    ProbabilityDist dist = quarters();
    CHECK(dist.prob(Event{0b110}) == make_rat(1, 2));
    CHECK(dist.prob(Event{0b010}) == make_rat(1, 4));
    CHECK(dist.prob(dist.algebra().top()) == 1);
    CHECK(dist.prob(dist.algebra().bottom()) == 0);

    std::vector<Rat> table = event_prob_table(dist);
    for (std::uint32_t e = 0; e < dist.algebra().event_count(); ++e) {
        CHECK(table[e] == dist.prob(Event{e}));
    }
}

TEST_CASE("distribution validation") {
    Algebra alg(2);
    CHECK_THROWS_WITH_AS(ProbabilityDist(alg, {make_rat(1, 2), make_rat(2, 5)}),
                         doctest::Contains("not normalized"), ValidationError);
    CHECK_THROWS_AS(ProbabilityDist(alg, {make_rat(0, 1), make_rat(1, 1)}), ValidationError);
    CHECK_THROWS_AS(ProbabilityDist(alg, {make_rat(3, 2), make_rat(-1, 2)}), ValidationError);
    CHECK_THROWS_AS(ProbabilityDist(alg, {make_rat(1, 1)}), ValidationError);
}

TEST_CASE("sampled distributions are positive and normalized") {
    for (unsigned n = 1; n <= 5; ++n) {
        Algebra alg(n);
        Rng rng(n * 17);
        for (unsigned i = 0; i < 20; ++i) {
            ProbabilityDist dist = ProbabilityDist::sample(alg, rng);
            Rat total = 0;
            for (unsigned alpha = 0; alpha < n; ++alpha) {
                CHECK(dist.atom_weight(alpha) > 0);
                total += dist.atom_weight(alpha);
            }
            CHECK(total == 1);
        }
    }
}

TEST_CASE("probability of the conditional on the worked example") {
    ProbabilityDist dist = quarters();
    SelectionFunction f = worked_example_selection();
    const Event a{0b110};
    CHECK(prob_conditional(dist, f, a, Event{0b010}) == make_rat(1, 4));
    CHECK(prob_conditional(dist, f, a, dist.algebra().top()) == 1);
    // Emptiness makes the bottom antecedent certain.
    for (std::uint32_t b = 0; b < dist.algebra().event_count(); ++b) {
        CHECK(prob_conditional(dist, f, dist.algebra().bottom(), Event{b}) == 1);
    }
}

TEST_CASE("imaged mass groups worlds by selected event") {
    ProbabilityDist dist = quarters();
    SelectionFunction f = worked_example_selection();
    MassDistribution mass = imaged_mass(dist, f, Event{0b110});
    REQUIRE(mass.entries.size() == 3);
    CHECK(*mass.mass_of(Event{0b010}) == make_rat(1, 4));
    CHECK(*mass.mass_of(Event{0b100}) == make_rat(1, 4));
    CHECK(*mass.mass_of(Event{0b110}) == make_rat(1, 2));
    CHECK(mass.mass_of(Event{0b001}) == nullptr);

    Rat total = 0;
    for (const auto& [event, m] : mass.entries) {
        total += m;
    }
    CHECK(total == 1);

    SUBCASE("single-atom cells put all mass on singletons") {
        SelectionFunction g = centered_least_selection(dist.algebra());
        for (std::uint32_t a = 1; a < dist.algebra().event_count(); ++a) {
            MassDistribution m = imaged_mass(dist, g, Event{a});
            for (const auto& [event, w] : m.entries) {
                CHECK(card(event) == 1);
            }
        }
    }

    SUBCASE("constant cell concentrates the mass") {
        SelectionFunction g = SelectionFunction::filled(dist.algebra(), Event{0b011});
        MassDistribution m = imaged_mass(dist, g, Event{0b101});
        REQUIRE(m.entries.size() == 1);
        CHECK(m.entries.front().first == Event{0b011});
        CHECK(m.entries.front().second == 1);
    }
}

TEST_CASE("imaged belief on the worked example") {
    ProbabilityDist dist = quarters();
    SelectionFunction f = worked_example_selection();
    const Event a{0b110};
    CHECK(imaged_belief(dist, f, a, Event{0b010}) == make_rat(1, 4));
    CHECK(imaged_belief(dist, f, a, Event{0b110}) == 1);
    CHECK(imaged_belief(dist, f, a, dist.algebra().top()) == 1);
    CHECK(imaged_belief(dist, f, a, dist.algebra().bottom()) == 0);

    SUBCASE("belief of bottom is the mass of empty cells") {
        SelectionFunction g = worked_example_selection();
        g.set(Event{0b011}, 0, g.algebra().bottom()); // kill normality at one cell
        CHECK(imaged_belief(dist, g, Event{0b011}, g.algebra().bottom()) == make_rat(1, 2));
        CHECK(imaged_belief(dist, g, Event{0b110}, g.algebra().bottom()) == 0);
    }
}

TEST_CASE("three routes to the conditional's probability agree") {
    for (unsigned n = 2; n <= 4; ++n) {
        Algebra alg(n);
        Rng rng(n);
        for (unsigned i = 0; i < 25; ++i) {
            SelectionFunction f = sample_selection_function(alg, {}, rng.next());
            ProbabilityDist dist = ProbabilityDist::sample(alg, rng);
            for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
                for (std::uint32_t b = 0; b < alg.event_count(); ++b) {
                    Rat direct = prob_conditional(dist, f, Event{a}, Event{b});
                    CHECK(direct == dist.prob(box(f, Event{a}, Event{b})));
                    CHECK(direct == imaged_belief(dist, f, Event{a}, Event{b}));
                }
            }
        }
    }
}

TEST_CASE("imaged belief is superadditive and monotone") {
    Algebra alg(3);
    Rng rng(5);
    for (unsigned i = 0; i < 40; ++i) {
        SelectionFunction f = sample_selection_function(alg, {}, rng.next());
        ProbabilityDist dist = ProbabilityDist::sample(alg, rng);
        for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
            MassDistribution mass = imaged_mass(dist, f, Event{a});
            std::vector<Rat> bel(alg.event_count());
            for (std::uint32_t x = 0; x < alg.event_count(); ++x) {
                bel[x] = belief_from_mass(mass, Event{x});
            }
            CHECK(bel[alg.full_mask()] == 1);
            for (std::uint32_t x = 0; x < alg.event_count(); ++x) {
                for (std::uint32_t y = 0; y < alg.event_count(); ++y) {
                    CHECK(bel[x | y] + bel[x & y] >= bel[x] + bel[y]);
                    if (leq(Event{x}, Event{y})) {
                        CHECK(bel[x] <= bel[y]);
                    }
                }
            }
        }
    }
}

TEST_CASE("equivalence report on the worked example") {
    ProbabilityDist dist = quarters();
    SelectionFunction f = worked_example_selection();
    Prop1Report report = proposition1_report(dist, f, Event{0b110});
    CHECK_FALSE(report.additive);
    CHECK_FALSE(report.unique);
    CHECK_FALSE(report.functional);
    CHECK_FALSE(report.box_eq_diamond);
    CHECK(report.consistent());
    REQUIRE(report.witness.has_value());
    CHECK(report.witness->first == Event{0b010});
    CHECK(report.witness->second == Event{0b100});
}

TEST_CASE("equivalence report on Stalnaker tables") {
    Algebra alg(3);
    ProbabilityDist dist = quarters();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        SelectionFunction f = sample_stalnaker_selection(alg, seed);
        for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
            Prop1Report report = proposition1_report(dist, f, Event{a});
            CHECK(report.additive);
            CHECK(report.unique);
            CHECK(report.functional);
            CHECK(report.box_eq_diamond);
            CHECK(report.consistent());
        }
        // At bottom everything flips off together: cells are empty there.
        Prop1Report bottom = proposition1_report(dist, f, alg.bottom());
        CHECK(bottom.consistent());
        CHECK_FALSE(bottom.unique);
    }
}

TEST_CASE("single-atom cells make the conditional's probability additive") {
    for (unsigned n = 2; n <= 4; ++n) {
        Algebra alg(n);
        Rng rng(n * 97);
        for (unsigned i = 0; i < 10; ++i) {
            SelectionFunction f =
                sample_selection_function(alg, {FrameProperty::UniquenessStrict}, rng.next());
            ProbabilityDist dist = ProbabilityDist::sample(alg, rng);
            for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
                Prop1Report report = proposition1_report(dist, f, Event{a});
                CHECK(report.additive);
                CHECK(report.consistent());
            }
        }
    }
}

TEST_CASE("equivalence flags agree on random models") {
    for (unsigned n = 2; n <= 4; ++n) {
        Algebra alg(n);
        Rng rng(n * 31);
        for (unsigned i = 0; i < 60; ++i) {
            SelectionFunction f = sample_selection_function(alg, {}, rng.next());
            ProbabilityDist dist = ProbabilityDist::sample(alg, rng);
            for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
                Prop1Report report = proposition1_report(dist, f, Event{a});
                CAPTURE(n);
                CAPTURE(a);
                CHECK(report.consistent());
            }
        }
    }
}
