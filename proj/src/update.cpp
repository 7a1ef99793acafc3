#include "imago/update.hpp"

#include "imago/errors.hpp"

namespace imago {

namespace {

void require_normal(const SelectionFunction& f, const char* what) {
    if (!check_property(f, FrameProperty::Normality)) {
        throw DomainError(std::string(what) + " requires a normal selection function");
    }
}

} // namespace

DistributionFunction::DistributionFunction(SelectionFunction f)
    : selection_(std::move(f)),
      cells_(static_cast<std::size_t>(selection_.algebra().event_count()) *
             selection_.algebra().atom_count()) {}

DistributionFunction DistributionFunction::uniform(const SelectionFunction& f) {
    require_normal(f, "uniform lambda");
    DistributionFunction lam(f);
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
            const unsigned k = card(f.select(Event{a}, alpha));
            lam.set_cell(Event{a}, alpha, std::vector<Rat>(k, make_rat(1, k)));
        }
    }
    return lam;
}

DistributionFunction DistributionFunction::lewis(const SelectionFunction& f) {
    if (!strict_uniqueness_above_bottom(f)) {
        throw DomainError("lewis lambda requires singleton cells at every nonbottom antecedent");
    }
    DistributionFunction lam(f);
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
            lam.set_cell(Event{a}, alpha, {Rat(1)});
        }
    }
    return lam;
}

DistributionFunction DistributionFunction::bayes(const ProbabilityDist& dist,
                                                 const SelectionFunction& f) {
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
            if (f.select(Event{a}, alpha) != Event{a}) {
                throw DomainError("bayes lambda requires f(a, alpha) = a at every nonbottom "
                                  "antecedent; cell (" + alg.event_label(Event{a}) + ", " +
                                  alg.atom_name(alpha) + ") differs");
            }
        }
    }
    DistributionFunction lam(f);
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        const Rat pa = dist.prob(Event{a});
        std::vector<Rat> weights;
        for (unsigned beta = 0; beta < alg.atom_count(); ++beta) {
            if (contains(Event{a}, beta)) {
                weights.push_back(dist.atom_weight(beta) / pa);
            }
        }
        for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
            lam.set_cell(Event{a}, alpha, weights);
        }
    }
    return lam;
}

DistributionFunction DistributionFunction::random(const SelectionFunction& f, Rng& rng,
                                                  unsigned max_weight) {
    require_normal(f, "random lambda");
    DistributionFunction lam(f);
    const Algebra& alg = f.algebra();
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
            const unsigned k = card(f.select(Event{a}, alpha));
            std::vector<long> raw(k);
            long total = 0;
            for (auto& w : raw) {
                w = 1 + static_cast<long>(rng.below(max_weight));
                total += w;
            }
            std::vector<Rat> weights;
            weights.reserve(k);
            for (long w : raw) {
                weights.push_back(make_rat(w, total));
            }
            lam.set_cell(Event{a}, alpha, std::move(weights));
        }
    }
    return lam;
}

const std::vector<Rat>& DistributionFunction::cell(Event a, AtomIndex alpha) const {
    algebra().require_valid(a);
    algebra().require_valid_atom(alpha);
    return cells_[a.bits * algebra().atom_count() + alpha];
}

Rat DistributionFunction::weight(Event a, AtomIndex alpha, AtomIndex beta) const {
    algebra().require_valid_atom(beta);
    const Event selected = selection_.select(a, alpha);
    const std::vector<Rat>& ws = cell(a, alpha);
    unsigned slot = 0;
    for (unsigned i = 0; i < algebra().atom_count(); ++i) {
        if (!contains(selected, i)) {
            continue;
        }
        if (i == beta) {
            return slot < ws.size() ? ws[slot] : Rat(0);
        }
        ++slot;
    }
    return Rat(0);
}

void DistributionFunction::set_cell(Event a, AtomIndex alpha, std::vector<Rat> weights) {
    algebra().require_valid(a);
    algebra().require_valid_atom(alpha);
    if (is_bottom(a)) {
        throw DomainError("lambda stores no cells at the bottom antecedent");
    }
    cells_[a.bits * algebra().atom_count() + alpha] = std::move(weights);
}

LambdaValidation DistributionFunction::validate() const {
    LambdaValidation result;
    const Algebra& alg = algebra();
    auto cell_name = [&](std::uint32_t a, unsigned alpha) {
        return "(" + alg.event_label(Event{a}) + ", " + alg.atom_name(alpha) + ")";
    };
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        for (unsigned alpha = 0; alpha < alg.atom_count(); ++alpha) {
            const Event selected = selection_.select(Event{a}, alpha);
            const std::vector<Rat>& ws = cells_[a * alg.atom_count() + alpha];
            if (is_bottom(selected)) {
                result.violations.push_back(
                    "cell " + cell_name(a, alpha) +
                    ": selection is empty, no distribution over it exists (f not normal)");
                continue;
            }
            if (ws.size() != card(selected)) {
                result.violations.push_back("cell " + cell_name(a, alpha) + ": " +
                                            std::to_string(ws.size()) + " weights for " +
                                            std::to_string(card(selected)) + " selected atoms");
                continue;
            }
            Rat total = 0;
            bool positive = true;
            for (const Rat& w : ws) {
                if (w <= 0) {
                    positive = false;
                }
                total += w;
            }
            if (!positive) {
                result.violations.push_back("cell " + cell_name(a, alpha) +
                                            ": zero or negative weight on a selected atom");
            }
            if (total != 1) {
                result.violations.push_back("cell " + cell_name(a, alpha) + ": weights sum to " +
                                            rat_str(total));
            }
        }
    }
    result.ok = result.violations.empty();
    return result;
}

void DistributionFunction::require_valid() const {
    LambdaValidation v = validate();
    if (!v.ok) {
        throw ValidationError("invalid lambda: " + v.violations.front());
    }
}

std::vector<Rat> updated_atom_dist(const ProbabilityDist& dist, const DistributionFunction& lam,
                                   Event a) {
    const Algebra& alg = lam.algebra();
    alg.require_valid(a);
    if (is_bottom(a)) {
        throw DomainError("updated probability is undefined at the bottom antecedent");
    }
    const unsigned n = alg.atom_count();
    std::vector<Rat> updated(n, Rat(0));
    for (unsigned alpha = 0; alpha < n; ++alpha) {
        const Event selected = lam.selection().select(a, alpha);
        const std::vector<Rat>& ws = lam.cell(a, alpha);
        unsigned slot = 0;
        for (unsigned beta = 0; beta < n; ++beta) {
            if (contains(selected, beta)) {
                updated[beta] += ws[slot] * dist.atom_weight(alpha);
                ++slot;
            }
        }
    }
    return updated;
}

Rat updated_prob(const ProbabilityDist& dist, const DistributionFunction& lam, Event a,
                 Event b) {
    lam.algebra().require_valid(b);
    const std::vector<Rat> atoms = updated_atom_dist(dist, lam, a);
    Rat total = 0;
    for (unsigned beta = 0; beta < lam.algebra().atom_count(); ++beta) {
        if (contains(b, beta)) {
            total += atoms[beta];
        }
    }
    return total;
}

DistributionFunction build_lambda(LambdaKind kind, const ProbabilityDist& dist,
                                  const SelectionFunction& f) {
    switch (kind) {
    case LambdaKind::Uniform:
        return DistributionFunction::uniform(f);
    case LambdaKind::Lewis:
        return DistributionFunction::lewis(f);
    case LambdaKind::Bayes:
        return DistributionFunction::bayes(dist, f);
    }
    throw DomainError("unknown lambda kind");
}

Rat lambda_gap(const ProbabilityDist& dist, const SelectionFunction& f,
               const DistributionFunction& lam, Event a, Event b) {
    return updated_prob(dist, lam, a, b) - prob_conditional(dist, f, a, b);
}

Fact7Result fact7_check(const ProbabilityDist& dist, const SelectionFunction& f,
                        const DistributionFunction& lam) {
    require_normal(f, "fact7_check");
    lam.require_valid();
    const Algebra& alg = f.algebra();
    Fact7Result result;
    result.holds = true;
    result.max_gap = 0;
    for (std::uint32_t a = 1; a < alg.event_count(); ++a) {
        const std::vector<Rat> atoms = updated_atom_dist(dist, lam, Event{a});
        for (std::uint32_t b = 0; b < alg.event_count(); ++b) {
            Rat upd = 0;
            for (unsigned beta = 0; beta < alg.atom_count(); ++beta) {
                if (contains(Event{b}, beta)) {
                    upd += atoms[beta];
                }
            }
            Rat gap = upd - prob_conditional(dist, f, Event{a}, Event{b});
            if (gap < 0) {
                result.holds = false;
            }
            if (!result.witness || gap > result.max_gap) {
                result.max_gap = gap;
                result.witness = std::make_pair(Event{a}, Event{b});
            }
        }
    }
    return result;
}

Theorem1Result theorem1_check(const ProbabilityDist& dist, const SelectionFunction& f,
                              const DistributionFunction& lam) {
    require_normal(f, "theorem1_check");
    lam.require_valid();
    const Algebra& alg = f.algebra();
    Theorem1Result result;
    result.equality_forall = true;
    result.uniqueness = strict_uniqueness_above_bottom(f);
    for (std::uint32_t a = 1; a < alg.event_count() && result.equality_forall; ++a) {
        const std::vector<Rat> atoms = updated_atom_dist(dist, lam, Event{a});
        for (std::uint32_t b = 0; b < alg.event_count(); ++b) {
            Rat upd = 0;
            for (unsigned beta = 0; beta < alg.atom_count(); ++beta) {
                if (contains(Event{b}, beta)) {
                    upd += atoms[beta];
                }
            }
            if (upd != prob_conditional(dist, f, Event{a}, Event{b})) {
                result.equality_forall = false;
                result.witness = std::make_pair(Event{a}, Event{b});
                break;
            }
        }
    }
    return result;
}

} // namespace imago
