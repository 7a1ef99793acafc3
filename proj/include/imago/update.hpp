#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "imago/belief.hpp"
#include "imago/rational.hpp"
#include "imago/selection.hpp"

namespace imago {

struct LambdaValidation {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Per-cell redistribution weights for a selection function: for every
/// antecedent a != bottom and world alpha, a probability distribution over
/// the atoms of f(a, alpha). Two constraints per cell:
///   - a weight is zero exactly off the selected set (stored sparsely, so
///     only the selected atoms carry weights and each must be positive),
///   - the weights sum to 1.
/// Cells exist only for a != bottom; the bottom row never updates. A valid
/// table therefore requires f to be normal.
class DistributionFunction {
public:
    explicit DistributionFunction(SelectionFunction f);

    static DistributionFunction uniform(const SelectionFunction& f);

    /// Indicator weights; requires every nonbottom cell to be a singleton.
    static DistributionFunction lewis(const SelectionFunction& f);

    /// Conditionalization weights P(beta)/P(a); requires f(a, alpha) = a on
    /// every nonbottom antecedent (the caller supplies that f explicitly).
    static DistributionFunction bayes(const ProbabilityDist& dist, const SelectionFunction& f);

    /// Seeded positive weights over each selected set, normalized exactly.
    static DistributionFunction random(const SelectionFunction& f, Rng& rng,
                                       unsigned max_weight = 1000);

    const SelectionFunction& selection() const { return selection_; }
    const Algebra& algebra() const { return selection_.algebra(); }

    /// Weights of cell (a, alpha), aligned with the ascending atoms of
    /// f(a, alpha). Empty for the bottom row.
    const std::vector<Rat>& cell(Event a, AtomIndex alpha) const;

    /// Weight the cell gives to atom beta, zero when beta is off the
    /// selected set.
    Rat weight(Event a, AtomIndex alpha, AtomIndex beta) const;

    void set_cell(Event a, AtomIndex alpha, std::vector<Rat> weights);

    /// Checks both constraints in every cell; a nonnormal f is reported as a
    /// structural violation since no table can satisfy them.
    LambdaValidation validate() const;

    void require_valid() const;

private:
    SelectionFunction selection_;
    std::vector<std::vector<Rat>> cells_;
};

/// Updated atom distribution at antecedent a: each world's prior mass is
/// split across its selected worlds by the cell weights and re-collected per
/// atom. Throws DomainError when a is bottom.
std::vector<Rat> updated_atom_dist(const ProbabilityDist& dist, const DistributionFunction& lam,
                                   Event a);

/// Updated probability of b at antecedent a.
Rat updated_prob(const ProbabilityDist& dist, const DistributionFunction& lam, Event a, Event b);

enum class LambdaKind { Uniform, Lewis, Bayes };

DistributionFunction build_lambda(LambdaKind kind, const ProbabilityDist& dist,
                                  const SelectionFunction& f);

/// Updated-minus-conditional probability at one (a, b) pair.
Rat lambda_gap(const ProbabilityDist& dist, const SelectionFunction& f,
               const DistributionFunction& lam, Event a, Event b);

/// The conditional's probability never exceeds the updated probability when
/// f is normal. holds is the quantified inequality; max_gap / witness track
/// the largest slack, lexicographically least argmax.
struct Fact7Result {
    bool holds = false;
    Rat max_gap;
    std::optional<std::pair<Event, Event>> witness;
};

Fact7Result fact7_check(const ProbabilityDist& dist, const SelectionFunction& f,
                        const DistributionFunction& lam);

/// Equality of conditional probability and updated probability over every
/// (a != bottom, b), against exactly-one-atom cells above bottom. The two
/// flags agree on every valid input; witness is the least violating pair.
struct Theorem1Result {
    bool equality_forall = false;
    bool uniqueness = false;
    std::optional<std::pair<Event, Event>> witness;

    bool agree() const { return equality_forall == uniqueness; }
};

Theorem1Result theorem1_check(const ProbabilityDist& dist, const SelectionFunction& f,
                              const DistributionFunction& lam);

} // namespace imago
