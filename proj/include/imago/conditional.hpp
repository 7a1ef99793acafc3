#pragma once

#include "imago/algebra.hpp"
#include "imago/selection.hpp"

namespace imago {

/// Necessity at antecedent a: worlds whose selected a-set lies inside b.
Event box(const SelectionFunction& f, Event a, Event b);

/// The conditional operator a |> b. Identical to box by construction; kept as
/// a named entry point, with the identity asserted in tests rather than
/// reimplemented.
Event conditional(const SelectionFunction& f, Event a, Event b);

/// Possibility at antecedent a: worlds whose selected a-set meets b.
Event diamond(const SelectionFunction& f, Event a, Event b);

/// Successor set of a world under the accessibility relation at antecedent a.
Event accessible_from(const SelectionFunction& f, Event a, AtomIndex alpha);

/// One row of the property/identity correspondence table: lhs is the
/// algebraic identity quantified over all events, rhs the structural check
/// on the table. A correct implementation has lhs == rhs on every function.
struct Fact1Row {
    bool lhs;
    bool rhs;
};

Fact1Row check_fact1_row(const SelectionFunction& f, FrameProperty row);

} // namespace imago
