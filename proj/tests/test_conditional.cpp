#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "imago/conditional.hpp"
#include "imago/rng.hpp"
#include "imago/worked_example.hpp"

using namespace imago;

namespace {

SelectionFunction random_table(const Algebra& alg, std::uint64_t seed) {
    return sample_selection_function(alg, {}, seed);
}

} // namespace

TEST_CASE("conditional on the worked example") {
    SelectionFunction f = worked_example_selection();
    const Event a{0b110};
    CHECK(conditional(f, a, Event{0b010}) == Event{0b010});

    SUBCASE("bottom antecedent under emptiness gives top") {
        // The table satisfies emptiness, so nothing is selected at bottom.
        REQUIRE(check_property(f, FrameProperty::Emptiness));
        for (std::uint32_t b = 0; b < f.algebra().event_count(); ++b) {
            CHECK(conditional(f, f.algebra().bottom(), Event{b}) == f.algebra().top());
        }
    }

    SUBCASE("top consequent is always certain") {
        for (unsigned seed = 0; seed < 5; ++seed) {
            Algebra alg(3);
            SelectionFunction g = random_table(alg, seed);
            for (std::uint32_t x = 0; x < alg.event_count(); ++x) {
                CHECK(conditional(g, Event{x}, alg.top()) == alg.top());
            }
        }
    }
}

TEST_CASE("box and diamond on the worked example") {
    SelectionFunction f = worked_example_selection();
    const Event a{0b110};
    CHECK(box(f, a, Event{0b010}) == Event{0b010});
    CHECK(diamond(f, a, Event{0b010}) == Event{0b011});

    Algebra alg(3);
    for (unsigned seed = 0; seed < 5; ++seed) {
        SelectionFunction g = random_table(alg, seed);
        for (std::uint32_t x = 0; x < alg.event_count(); ++x) {
            CHECK(box(g, Event{x}, alg.top()) == alg.top());
            CHECK(diamond(g, Event{x}, alg.bottom()) == alg.bottom());
        }
    }
}

TEST_CASE("box equals diamond exactly on single-atom cells") {
    Algebra alg(3);
    SelectionFunction f = sample_selection_function(alg, {FrameProperty::UniquenessStrict}, 3);
    for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
        for (std::uint32_t x = 0; x < alg.event_count(); ++x) {
            CHECK(box(f, Event{a}, Event{x}) == diamond(f, Event{a}, Event{x}));
        }
    }

    SUBCASE("per-antecedent biconditional on random tables") {
        for (unsigned seed = 0; seed < 30; ++seed) {
            SelectionFunction g = random_table(alg, seed);
            for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
                bool all_equal = true;
                for (std::uint32_t x = 0; x < alg.event_count(); ++x) {
                    if (box(g, Event{a}, Event{x}) != diamond(g, Event{a}, Event{x})) {
                        all_equal = false;
                        break;
                    }
                }
                CHECK(all_equal == strict_uniqueness_at(g, Event{a}));
            }
        }
    }
}

TEST_CASE("operator laws on random tables") {
    for (unsigned n = 2; n <= 4; ++n) {
        Algebra alg(n);
        for (unsigned seed = 0; seed < 20; ++seed) {
            SelectionFunction f = random_table(alg, seed);
            for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
                // Conditional and box are the same operator.
                for (std::uint32_t b = 0; b < alg.event_count(); ++b) {
                    CHECK(conditional(f, Event{a}, Event{b}) == box(f, Event{a}, Event{b}));
                    // Duality.
                    CHECK(diamond(f, Event{a}, Event{b}) ==
                          alg.complement_of(box(f, Event{a}, alg.complement_of(Event{b}))));
                    // Monotonicity.
                    for (std::uint32_t c = 0; c < alg.event_count(); ++c) {
                        if (leq(Event{b}, Event{c})) {
                            CHECK(leq(box(f, Event{a}, Event{b}), box(f, Event{a}, Event{c})));
                        }
                    }
                }
                // Normal modal operator: box of top, and the K axiom.
                CHECK(box(f, Event{a}, alg.top()) == alg.top());
                for (std::uint32_t x = 0; x < alg.event_count(); ++x) {
                    for (std::uint32_t y = 0; y < alg.event_count(); ++y) {
                        CHECK(leq(box(f, Event{a}, alg.implication(Event{x}, Event{y})),
                                  alg.implication(box(f, Event{a}, Event{x}),
                                                  box(f, Event{a}, Event{y}))));
                    }
                }
            }
        }
    }
}

TEST_CASE("operators work at the sixteen-atom cap") {
    Algebra alg(16);
    SelectionFunction f = centered_least_selection(alg);
    const Event a{0xFFF0};
    CHECK(box(f, a, a) == alg.top());
    CHECK(box(f, a, Event{0x0010}) == Event{0x001F});
    CHECK(diamond(f, a, alg.bottom()) == alg.bottom());
    CHECK(conditional(f, alg.bottom(), Event{123}) == alg.top());
}

TEST_CASE("accessibility matches the table") {
    SelectionFunction f = worked_example_selection();
    CHECK(accessible_from(f, Event{0b110}, 0) == Event{0b110});
    CHECK(accessible_from(f, Event{0b110}, 1) == Event{0b010});
}

TEST_CASE("correspondence rows on canonical tables") {
    SUBCASE("normality row on the worked example") {
        Fact1Row row = check_fact1_row(worked_example_selection(), FrameProperty::Normality);
        CHECK(row.lhs);
        CHECK(row.rhs);
    }
    SUBCASE("emptiness row on the whole-antecedent table") {
        Algebra alg(3);
        Fact1Row row = check_fact1_row(antecedent_selection(alg), FrameProperty::Emptiness);
        CHECK(row.lhs);
        CHECK(row.rhs);
    }
    SUBCASE("uniqueness rows distinguish weak from strict") {
        Algebra alg(2);
        // Singletons above bottom, bottom at bottom: weak holds, strict fails.
        SelectionFunction f = centered_least_selection(alg);
        Fact1Row weak = check_fact1_row(f, FrameProperty::UniquenessWeak);
        CHECK(weak.lhs);
        CHECK(weak.rhs);
        Fact1Row strict = check_fact1_row(f, FrameProperty::UniquenessStrict);
        CHECK_FALSE(strict.lhs);
        CHECK_FALSE(strict.rhs);
    }
}

TEST_CASE("correspondence rows agree on sampled tables") {
    // The full two-atom sweep runs in the acceptance suite; here a seeded
    // sample of both algebra sizes keeps the loop fast.
    SUBCASE("two atoms") {
        Algebra alg(2);
        Rng rng(99);
        for (unsigned i = 0; i < 2000; ++i) {
            std::vector<Event> table(8);
            for (auto& cell : table) {
                cell = Event{static_cast<std::uint32_t>(rng.below(4))};
            }
            SelectionFunction f(alg, std::move(table));
            for (FrameProperty p : all_frame_properties()) {
                Fact1Row row = check_fact1_row(f, p);
                CAPTURE(property_name(p));
                CHECK(row.lhs == row.rhs);
            }
        }
    }
    SUBCASE("three atoms") {
        Algebra alg(3);
        for (unsigned seed = 0; seed < 200; ++seed) {
            SelectionFunction f = random_table(alg, seed);
            for (FrameProperty p : all_frame_properties()) {
                Fact1Row row = check_fact1_row(f, p);
                CAPTURE(property_name(p));
                CHECK(row.lhs == row.rhs);
            }
        }
    }
    SUBCASE("order-built tables hit the positive side of the global rows") {
        // Random tables almost never satisfy well_order or nesting, so the
        // agreement above is mostly false-false; preorder tables make the
        // rows hold.
        for (unsigned n = 3; n <= 4; ++n) {
            Algebra alg(n);
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                SelectionFunction f = sample_preorder_selection(alg, seed, seed % 2 == 0, false);
                for (FrameProperty p : {FrameProperty::WellOrder, FrameProperty::Nesting,
                                        FrameProperty::Identity}) {
                    Fact1Row row = check_fact1_row(f, p);
                    CAPTURE(property_name(p));
                    CHECK(row.lhs);
                    CHECK(row.rhs);
                }
            }
        }
    }
}
