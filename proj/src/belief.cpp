#include "imago/belief.hpp"

#include <algorithm>
#include <map>

#include "imago/errors.hpp"

namespace imago {

ProbabilityDist::ProbabilityDist(Algebra algebra, std::vector<Rat> atom_weights)
    : algebra_(std::move(algebra)), weights_(std::move(atom_weights)) {
    if (weights_.size() != algebra_.atom_count()) {
        throw ValidationError("probability has " + std::to_string(weights_.size()) +
                              " weights, expected " + std::to_string(algebra_.atom_count()));
    }
    Rat total = 0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] <= 0) {
            throw ValidationError("probability weight of atom '" + algebra_.atom_name(
                                      static_cast<AtomIndex>(i)) + "' is not positive");
        }
        total += weights_[i];
    }
    if (total != 1) {
        throw ValidationError("probability not normalized: weights sum to " + rat_str(total));
    }
}

ProbabilityDist ProbabilityDist::sample(const Algebra& algebra, Rng& rng, unsigned max_weight) {
    std::vector<long> raw(algebra.atom_count());
    long total = 0;
    for (auto& w : raw) {
        w = 1 + static_cast<long>(rng.below(max_weight));
        total += w;
    }
    std::vector<Rat> weights;
    weights.reserve(raw.size());
    for (long w : raw) {
        weights.push_back(make_rat(w, total));
    }
    return ProbabilityDist(algebra, std::move(weights));
}

Rat ProbabilityDist::prob(Event x) const {
    algebra_.require_valid(x);
    Rat total = 0;
    for (unsigned i = 0; i < algebra_.atom_count(); ++i) {
        if (contains(x, i)) {
            total += weights_[i];
        }
    }
    return total;
}

std::vector<Rat> event_prob_table(const ProbabilityDist& dist) {
    const std::uint32_t events = dist.algebra().event_count();
    std::vector<Rat> table(events);
    table[0] = 0;
    for (std::uint32_t e = 1; e < events; ++e) {
        const unsigned low = static_cast<unsigned>(std::countr_zero(e));
        table[e] = table[e & (e - 1)] + dist.atom_weight(low);
    }
    return table;
}

Rat prob_conditional(const ProbabilityDist& dist, const SelectionFunction& f, Event a, Event b) {
    return dist.prob(conditional(f, a, b));
}

const Rat* MassDistribution::mass_of(Event e) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), e,
                               [](const auto& entry, Event key) { return entry.first < key; });
    if (it != entries.end() && it->first == e) {
        return &it->second;
    }
    return nullptr;
}

MassDistribution imaged_mass(const ProbabilityDist& dist, const SelectionFunction& f, Event a) {
    f.algebra().require_valid(a);
    std::map<Event, Rat> grouped;
    for (unsigned alpha = 0; alpha < f.algebra().atom_count(); ++alpha) {
        grouped[f.select(a, alpha)] += dist.atom_weight(alpha);
    }
    MassDistribution mass;
    mass.antecedent = a;
    mass.entries.assign(grouped.begin(), grouped.end());
    return mass;
}

Rat belief_from_mass(const MassDistribution& mass, Event b) {
    Rat total = 0;
    for (const auto& [event, m] : mass.entries) {
        if (leq(event, b)) {
            total += m;
        }
    }
    return total;
}

Rat imaged_belief(const ProbabilityDist& dist, const SelectionFunction& f, Event a, Event b) {
    f.algebra().require_valid(b);
    return belief_from_mass(imaged_mass(dist, f, a), b);
}

Prop1Report proposition1_report(const ProbabilityDist& dist, const SelectionFunction& f,
                                Event a) {
    const Algebra& alg = f.algebra();
    alg.require_valid(a);
    const std::uint32_t events = alg.event_count();
    const unsigned n = alg.atom_count();

    Prop1Report report;

    // Additivity via the mass route: endpoints, then the modular law.
    std::vector<Rat> bel(events);
    MassDistribution mass = imaged_mass(dist, f, a);
    for (std::uint32_t x = 0; x < events; ++x) {
        bel[x] = belief_from_mass(mass, Event{x});
    }
    report.additive = true;
    if (bel[0] != 0) {
        report.additive = false;
        report.witness = std::make_pair(alg.bottom(), alg.bottom());
    } else if (bel[alg.full_mask()] != 1) {
        report.additive = false;
        report.witness = std::make_pair(alg.top(), alg.top());
    } else {
        for (std::uint32_t x = 0; x < events && report.additive; ++x) {
            for (std::uint32_t y = 0; y < events; ++y) {
                if (bel[x | y] + bel[x & y] != bel[x] + bel[y]) {
                    report.additive = false;
                    report.witness = std::make_pair(Event{x}, Event{y});
                    break;
                }
            }
        }
    }

    report.unique = strict_uniqueness_at(f, a);

    // Totality and functionality of the accessibility relation at a.
    report.functional = true;
    for (unsigned alpha = 0; alpha < n; ++alpha) {
        if (card(accessible_from(f, a, alpha)) != 1) {
            report.functional = false;
            break;
        }
    }

    report.box_eq_diamond = true;
    for (std::uint32_t x = 0; x < events; ++x) {
        if (box(f, a, Event{x}) != diamond(f, a, Event{x})) {
            report.box_eq_diamond = false;
            break;
        }
    }

    return report;
}

} // namespace imago
