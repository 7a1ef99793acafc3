#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "imago/algebra.hpp"
#include "imago/conditional.hpp"
#include "imago/rational.hpp"
#include "imago/rng.hpp"
#include "imago/selection.hpp"

namespace imago {

/// Positive exact-rational distribution over the atoms; weights sum to 1.
class ProbabilityDist {
public:
    ProbabilityDist(Algebra algebra, std::vector<Rat> atom_weights);

    /// Positive integer weights in [1, max_weight], normalized exactly.
    static ProbabilityDist sample(const Algebra& algebra, Rng& rng, unsigned max_weight = 1000);

    const Algebra& algebra() const { return algebra_; }
    const Rat& atom_weight(AtomIndex alpha) const { return weights_[alpha]; }
    const std::vector<Rat>& weights() const { return weights_; }

    /// Sum of atom weights below x.
    Rat prob(Event x) const;

private:
    Algebra algebra_;
    std::vector<Rat> weights_;
};

/// prob for every event, indexed by bitmask. Handy for exhaustive sweeps.
std::vector<Rat> event_prob_table(const ProbabilityDist& dist);

/// P(a |> b): total weight of the worlds satisfying the conditional.
Rat prob_conditional(const ProbabilityDist& dist, const SelectionFunction& f, Event a, Event b);

/// Mass each world sends to its selected event at antecedent a. Entries are
/// sorted by event bitmask; zero-mass events are omitted; the masses sum to 1.
struct MassDistribution {
    Event antecedent;
    std::vector<std::pair<Event, Rat>> entries;

    const Rat* mass_of(Event e) const;
};

MassDistribution imaged_mass(const ProbabilityDist& dist, const SelectionFunction& f, Event a);

/// Sum of the mass entries lying below b.
Rat belief_from_mass(const MassDistribution& mass, Event b);

/// Belief of b imaged on a, computed through the mass distribution. This is
/// the route independent of prob_conditional; the two agree on every input.
Rat imaged_belief(const ProbabilityDist& dist, const SelectionFunction& f, Event a, Event b);

/// The four equivalent-by-theory conditions at one antecedent, evaluated
/// independently:
///   additive        P(a |> .) hits 0 at bottom, 1 at top, and satisfies the
///                   modular law on every pair,
///   unique          every cell at a holds exactly one atom,
///   functional      the accessibility relation at a is a total function,
///   box_eq_diamond  box and diamond coincide on every argument.
/// witness carries the first pair breaking the modular law, scan order
/// ascending (x.bits, y.bits), endpoints reported as (bottom,bottom) or
/// (top,top).
struct Prop1Report {
    bool additive = false;
    bool unique = false;
    bool functional = false;
    bool box_eq_diamond = false;
    std::optional<std::pair<Event, Event>> witness;

    bool consistent() const {
        return additive == unique && unique == functional && functional == box_eq_diamond;
    }
};

Prop1Report proposition1_report(const ProbabilityDist& dist, const SelectionFunction& f, Event a);

} // namespace imago
