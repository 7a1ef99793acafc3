#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "imago/algebra.hpp"
#include "imago/errors.hpp"

using namespace imago;

TEST_CASE("connectives on the three-atom algebra") {
    Algebra alg(3);
    const Event x{0b011}; // {a1,a2}
    const Event y{0b110}; // {a2,a3}

    Connectives c = alg.connectives(x, y);
    CHECK(c.meet == Event{0b010});
    CHECK(c.join == alg.top());
    CHECK(c.complement_x == Event{0b100});
    CHECK(c.implication == Event{0b110});

    SUBCASE("bottom absorbs meet, is neutral for join") {
        Connectives b = alg.connectives(alg.bottom(), y);
        CHECK(b.meet == alg.bottom());
        CHECK(b.join == y);
        CHECK(b.complement_x == alg.top());
    }
    SUBCASE("top implies top") {
        CHECK(alg.implication(alg.top(), alg.top()) == alg.top());
    }
}

TEST_CASE("invalid events are rejected") {
    Algebra alg(3);
    CHECK_THROWS_AS(alg.connectives(Event{0b1000}, Event{0}), InvalidEventError);
    CHECK_THROWS_AS(alg.require_valid(Event{42}), InvalidEventError);
    CHECK(alg.valid(Event{0b111}));
}

TEST_CASE("lattice order") {
    Algebra alg(3);
    CHECK(leq(Event{0b010}, Event{0b110}));
    CHECK_FALSE(leq(Event{0b011}, Event{0b110}));
    for (std::uint32_t e = 0; e < alg.event_count(); ++e) {
        CHECK(leq(alg.bottom(), Event{e}));
        CHECK(leq(Event{e}, alg.top()));
    }
}

TEST_CASE("atoms_of lists ascending indices") {
    Algebra alg(3);
    CHECK(alg.atoms_of(Event{0b101}) == std::vector<AtomIndex>{0, 2});
    CHECK(alg.atoms_of(alg.bottom()).empty());
    CHECK(alg.atoms_of(alg.top()) == std::vector<AtomIndex>{0, 1, 2});
    CHECK(card(Event{0b101}) == 2);
}

TEST_CASE("boolean identities hold exhaustively up to four atoms") {
    for (unsigned n = 1; n <= 4; ++n) {
        Algebra alg(n);
        const std::uint32_t events = alg.event_count();
        for (std::uint32_t x = 0; x < events; ++x) {
            CHECK(alg.complement_of(alg.complement_of(Event{x})) == Event{x});
            for (std::uint32_t y = 0; y < events; ++y) {
                // De Morgan.
                CHECK(alg.complement_of(meet(Event{x}, Event{y})) ==
                      join(alg.complement_of(Event{x}), alg.complement_of(Event{y})));
                // Cardinality balance.
                CHECK(card(join(Event{x}, Event{y})) + card(meet(Event{x}, Event{y})) ==
                      card(Event{x}) + card(Event{y}));
                // Antisymmetry.
                if (leq(Event{x}, Event{y}) && leq(Event{y}, Event{x})) {
                    CHECK(Event{x} == Event{y});
                }
                for (std::uint32_t z = 0; z < events; ++z) {
                    CHECK(meet(Event{x}, join(Event{y}, Event{z})) ==
                          join(meet(Event{x}, Event{y}), meet(Event{x}, Event{z})));
                    if (leq(Event{x}, Event{y}) && leq(Event{y}, Event{z})) {
                        CHECK(leq(Event{x}, Event{z}));
                    }
                }
            }
        }
    }
}

TEST_CASE("labels and lookups") {
    Algebra alg({"rain", "wind", "snow"});
    CHECK(alg.event_label(Event{0b101}) == "{rain,snow}");
    CHECK(alg.event_label(alg.bottom()) == "{}");
    CHECK(alg.atom_index("wind") == 1);
    CHECK_THROWS_AS(alg.atom_index("sun"), ParseError);
    CHECK(alg.event_of({2, 0}) == Event{0b101});
    CHECK(alg.singleton(1) == Event{0b010});
    CHECK(alg.least_atom(Event{0b110}) == 1);
}

TEST_CASE("algebra construction limits") {
    CHECK_THROWS_AS(Algebra(0), ValidationError);
    CHECK_THROWS_AS(Algebra(17), ValidationError);
    CHECK_THROWS_AS(Algebra({"a", "a"}), ValidationError);
    CHECK_THROWS_AS(Algebra({""}), ValidationError);
    CHECK_THROWS_AS(Algebra({"a,b", "c"}), ValidationError);
    Algebra big(16);
    CHECK(big.event_count() == 65536u);
    CHECK(big.top() == Event{0xFFFF});
}
