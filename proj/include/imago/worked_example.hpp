#pragma once

#include <optional>

#include "imago/belief.hpp"
#include "imago/selection.hpp"
#include "imago/update.hpp"

namespace imago {

/// Every nonbottom cell selects the whole antecedent, the bottom row selects
/// bottom. This is the table conditionalization lives on.
SelectionFunction antecedent_selection(const Algebra& algebra);

/// Centered least-world table: {alpha} when alpha lies in a, otherwise the
/// singleton of the least atom of a; bottom at bottom. Classifies as
/// Stalnaker and is normal.
SelectionFunction centered_least_selection(const Algebra& algebra);

struct WorkedExampleOptions {
    /// Replaces the weight the wide cell gives to its first selected atom
    /// (second atom gets the rest). Default 1/2 (uniform).
    std::optional<Rat> lambda_weight;
    /// Shrinks the wide cell to a singleton, making every cell at the
    /// example antecedent unique.
    bool lewisify = false;
};

/// The built-in three-world model: a selection table that is normal but has
/// one two-atom cell, the prior (1/2, 1/4, 1/4), and a uniform lambda.
/// Updating on {a2,a3} then strictly exceeds the conditional's probability
/// at {a2}, which is the smallest certificate that equality needs
/// single-world selection.
struct WorkedExample {
    Algebra algebra;
    SelectionFunction selection;
    ProbabilityDist prior;
    DistributionFunction lambda;
    Event antecedent;
    Event consequent;
};

WorkedExample make_worked_example(const WorkedExampleOptions& options = {});

/// The worked example's selection table alone: the centered least-world
/// table with one wide cell at {a2,a3}.
SelectionFunction worked_example_selection();

} // namespace imago
