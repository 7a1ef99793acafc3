#include "imago/conditional.hpp"

namespace imago {

Event box(const SelectionFunction& f, Event a, Event b) {
    const Algebra& alg = f.algebra();
    alg.require_valid(a);
    alg.require_valid(b);
    Event result{0};
    for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
        if (leq(f.select(a, alpha), b)) {
            result.bits |= std::uint32_t{1} << alpha;
        }
    }
    return result;
}

Event conditional(const SelectionFunction& f, Event a, Event b) { return box(f, a, b); }

Event diamond(const SelectionFunction& f, Event a, Event b) {
    const Algebra& alg = f.algebra();
    alg.require_valid(a);
    alg.require_valid(b);
    Event result{0};
    for (unsigned beta = 0; beta < alg.atom_count(); ++beta) {
        if (!is_bottom(meet(f.select(a, beta), b))) {
            result.bits |= std::uint32_t{1} << beta;
        }
    }
    return result;
}

Event accessible_from(const SelectionFunction& f, Event a, AtomIndex alpha) {
    f.algebra().require_valid(a);
    f.algebra().require_valid_atom(alpha);
    return f.select(a, alpha);
}

namespace {

/// Weak-uniqueness identity: (a |> not b) v (a |> b) = top for all a, b.
bool uniqueness_weak_lhs(const SelectionFunction& f) {
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 0; a < alg.event_count(); ++a) {
        for (std::uint32_t b = 0; b < alg.event_count(); ++b) {
            Event nb = alg.complement_of(Event{b});
            if (join(box(f, Event{a}, nb), box(f, Event{a}, Event{b})) != alg.top()) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

Fact1Row check_fact1_row(const SelectionFunction& f, FrameProperty row) {
    const Algebra& alg = f.algebra();
    const std::uint32_t events = alg.event_count();
    bool lhs = true;

    switch (row) {
    case FrameProperty::Emptiness:
        for (std::uint32_t a = 0; a < events && lhs; ++a) {
            lhs = box(f, alg.bottom(), Event{a}) == alg.top();
        }
        break;
    case FrameProperty::Normality:
        for (std::uint32_t d = 1; d < events && lhs; ++d) {
            for (std::uint32_t b = 0; b < events && lhs; ++b) {
                Event nb = alg.complement_of(Event{b});
                lhs = leq(box(f, Event{d}, Event{b}),
                          alg.complement_of(box(f, Event{d}, nb)));
            }
        }
        break;
    case FrameProperty::Identity:
        for (std::uint32_t a = 0; a < events && lhs; ++a) {
            lhs = box(f, Event{a}, Event{a}) == alg.top();
        }
        break;
    case FrameProperty::Centering1:
        for (std::uint32_t a = 0; a < events && lhs; ++a) {
            for (std::uint32_t b = 0; b < events && lhs; ++b) {
                lhs = leq(box(f, Event{a}, Event{b}), alg.implication(Event{a}, Event{b}));
            }
        }
        break;
    case FrameProperty::Centering2:
        for (std::uint32_t a = 0; a < events && lhs; ++a) {
            for (std::uint32_t b = 0; b < events && lhs; ++b) {
                lhs = leq(meet(Event{a}, Event{b}), box(f, Event{a}, Event{b}));
            }
        }
        break;
    case FrameProperty::Centering:
        for (std::uint32_t a = 0; a < events && lhs; ++a) {
            for (std::uint32_t b = 0; b < events && lhs; ++b) {
                Event cond = box(f, Event{a}, Event{b});
                lhs = leq(meet(Event{a}, Event{b}), cond) &&
                      leq(cond, alg.implication(Event{a}, Event{b}));
            }
        }
        break;
    case FrameProperty::UniquenessWeak:
        lhs = uniqueness_weak_lhs(f);
        break;
    case FrameProperty::UniquenessStrict:
        // Weak identity plus "a |> bottom = bottom": no cell selects the
        // empty event, at any antecedent.
        lhs = uniqueness_weak_lhs(f);
        for (std::uint32_t a = 0; a < events && lhs; ++a) {
            lhs = box(f, Event{a}, alg.bottom()) == alg.bottom();
        }
        break;
    case FrameProperty::WellOrder:
        for (std::uint32_t a = 0; a < events && lhs; ++a) {
            for (std::uint32_t b = 0; b < events && lhs; ++b) {
                Event ab = box(f, Event{a}, Event{b});
                Event ba = box(f, Event{b}, Event{a});
                Event both = meet(ab, ba);
                for (std::uint32_t c = 0; c < events && lhs; ++c) {
                    lhs = leq(both, alg.biconditional(box(f, Event{a}, Event{c}),
                                                      box(f, Event{b}, Event{c})));
                }
            }
        }
        break;
    case FrameProperty::Nesting:
        for (std::uint32_t a = 0; a < events && lhs; ++a) {
            for (std::uint32_t b = 0; b < events && lhs; ++b) {
                Event ab = join(Event{a}, Event{b});
                Event to_a = box(f, ab, Event{a});
                Event to_b = box(f, ab, Event{b});
                for (std::uint32_t c = 0; c < events && lhs; ++c) {
                    Event joint = box(f, ab, Event{c});
                    Event split = meet(box(f, Event{a}, Event{c}), box(f, Event{b}, Event{c}));
                    Event agreed = alg.biconditional(joint, split);
                    lhs = join(join(to_a, to_b), agreed) == alg.top();
                }
            }
        }
        break;
    }

    return Fact1Row{lhs, check_property(f, row)};
}

} // namespace imago
