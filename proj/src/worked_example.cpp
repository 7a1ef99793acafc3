#include "imago/worked_example.hpp"

#include "imago/errors.hpp"

namespace imago {

SelectionFunction antecedent_selection(const Algebra& algebra) {
    SelectionFunction f = SelectionFunction::filled(algebra, algebra.bottom());
    for (std::uint32_t a = 0; a < algebra.event_count(); ++a) {
        for (unsigned alpha = 0; alpha < algebra.atom_count(); ++alpha) {
            f.set(Event{a}, alpha, Event{a});
        }
    }
    return f;
}

SelectionFunction centered_least_selection(const Algebra& algebra) {
    SelectionFunction f = SelectionFunction::filled(algebra, algebra.bottom());
    for (std::uint32_t a = 1; a < algebra.event_count(); ++a) {
        for (unsigned alpha = 0; alpha < algebra.atom_count(); ++alpha) {
            if (contains(Event{a}, alpha)) {
                f.set(Event{a}, alpha, algebra.singleton(alpha));
            } else {
                f.set(Event{a}, alpha, algebra.singleton(algebra.least_atom(Event{a})));
            }
        }
    }
    return f;
}

SelectionFunction worked_example_selection() {
    const Algebra algebra(3);
    // Centered least-world completion, with the one wide cell at {a2,a3}:
    // the world outside the antecedent selects both remaining worlds. Every
    // other antecedent keeps singleton cells, so this is the least model
    // violating weak uniqueness.
    SelectionFunction f = centered_least_selection(algebra);
    const Event a{0b110}; // {a2,a3}
    f.set(a, 0, a);
    return f;
}

WorkedExample make_worked_example(const WorkedExampleOptions& options) {
    Algebra algebra(3);
    SelectionFunction f = worked_example_selection();
    const Event antecedent{0b110};
    const Event consequent{0b010};

    if (options.lewisify) {
        f.set(antecedent, 0, Event{0b010});
    }

    ProbabilityDist prior(algebra, {make_rat(1, 2), make_rat(1, 4), make_rat(1, 4)});
    DistributionFunction lambda = DistributionFunction::uniform(f);
    if (options.lambda_weight) {
        const Rat w = *options.lambda_weight;
        if (w <= 0 || w >= 1) {
            throw ValidationError("lambda weight must lie strictly between 0 and 1, got " +
                                  rat_str(w));
        }
        if (!options.lewisify) {
            lambda.set_cell(antecedent, 0, {w, Rat(1) - w});
        }
    }

    return WorkedExample{std::move(algebra), std::move(f), std::move(prior), std::move(lambda),
                         antecedent, consequent};
}

} // namespace imago
