#include "imago/selection.hpp"

#include <algorithm>
#include <limits>

#include "imago/errors.hpp"

namespace imago {

namespace {

constexpr const char* kPropertyNames[kFramePropertyCount] = {
    "emptiness",        "normality", "identity",        "centering1", "centering2",
    "centering",        "uniqueness_weak", "uniqueness_strict", "well_order", "nesting",
};

/// Local admissibility of one cell (a, alpha): events e with sup <= e <= sub
/// and card within [card_min, card_max].
struct CellConstraint {
    std::uint32_t sup = 0;
    std::uint32_t sub = 0;
    unsigned card_min = 0;
    unsigned card_max = kMaxAtoms;

    bool admits(Event e) const {
        if ((e.bits & sup) != sup || (e.bits & ~sub) != 0) {
            return false;
        }
        unsigned c = card(e);
        return c >= card_min && c <= card_max;
    }
};

CellConstraint cell_constraint(const Algebra& algebra, PropertySet constraints, Event a,
                               AtomIndex alpha) {
    CellConstraint c;
    c.sub = algebra.full_mask();
    c.card_max = algebra.atom_count();
    if (constraints.contains(FrameProperty::Emptiness) && is_bottom(a)) {
        c.sub = 0;
    }
    if (constraints.contains(FrameProperty::Normality) && !is_bottom(a)) {
        c.card_min = std::max(c.card_min, 1u);
    }
    if (constraints.contains(FrameProperty::Identity)) {
        c.sub &= a.bits;
    }
    const bool alpha_in_a = contains(a, alpha);
    if (alpha_in_a && (constraints.contains(FrameProperty::Centering1) ||
                       constraints.contains(FrameProperty::Centering))) {
        c.sup |= std::uint32_t{1} << alpha;
    }
    if (alpha_in_a && (constraints.contains(FrameProperty::Centering2) ||
                       constraints.contains(FrameProperty::Centering))) {
        c.sub &= std::uint32_t{1} << alpha;
    }
    if (constraints.contains(FrameProperty::UniquenessWeak)) {
        c.card_max = std::min(c.card_max, 1u);
    }
    if (constraints.contains(FrameProperty::UniquenessStrict)) {
        c.card_min = std::max(c.card_min, 1u);
        c.card_max = std::min(c.card_max, 1u);
    }
    return c;
}

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) {
        return 0;
    }
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

std::uint64_t candidate_count(const CellConstraint& c) {
    if ((c.sup & ~c.sub) != 0 || c.card_min > c.card_max) {
        return 0;
    }
    const unsigned base = std::popcount(c.sup);
    const unsigned free = std::popcount(c.sub & ~c.sup);
    std::uint64_t total = 0;
    for (unsigned k = 0; k <= free; ++k) {
        unsigned cardinality = base + k;
        if (cardinality >= c.card_min && cardinality <= c.card_max) {
            total += binomial(free, k);
        }
    }
    return total;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    if (a > std::numeric_limits<std::uint64_t>::max() / b) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

bool passes_global(const SelectionFunction& f, PropertySet constraints) {
    if (constraints.contains(FrameProperty::WellOrder) &&
        !check_property(f, FrameProperty::WellOrder)) {
        return false;
    }
    if (constraints.contains(FrameProperty::Nesting) &&
        !check_property(f, FrameProperty::Nesting)) {
        return false;
    }
    return true;
}

/// Uniform draw among the events a cell constraint admits. Callers must have
/// ruled out empty candidate sets.
Event sample_cell(const CellConstraint& c, Rng& rng) {
    const std::uint32_t free_mask = c.sub & ~c.sup;
    const unsigned base = std::popcount(c.sup);
    if (c.card_min <= base && c.card_max >= base + static_cast<unsigned>(std::popcount(free_mask))) {
        // No binding cardinality constraint: uniform subset of the free bits.
        std::uint32_t subset = static_cast<std::uint32_t>(rng.next()) & free_mask;
        return Event{c.sup | subset};
    }
    if (c.card_max <= 1) {
        // Tiny candidate list: bottom and/or singletons.
        std::vector<Event> candidates;
        if (base == 0 && c.card_min == 0) {
            candidates.push_back(Event{0});
        }
        for (unsigned i = 0; i < 32; ++i) {
            Event e{std::uint32_t{1} << i};
            if ((e.bits & c.sub) == e.bits && (c.sup == 0 || c.sup == e.bits) &&
                card(e) >= c.card_min) {
                candidates.push_back(e);
            }
        }
        return candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
    }
    // Lower cardinality bound only (e.g. normality): rejection on the subset draw.
    for (;;) {
        std::uint32_t subset = static_cast<std::uint32_t>(rng.next()) & free_mask;
        Event e{c.sup | subset};
        unsigned cd = card(e);
        if (cd >= c.card_min && cd <= c.card_max) {
            return e;
        }
    }
}

} // namespace

const char* property_name(FrameProperty p) { return kPropertyNames[static_cast<unsigned>(p)]; }

std::optional<FrameProperty> parse_property(const std::string& name) {
    for (unsigned i = 0; i < kFramePropertyCount; ++i) {
        if (name == kPropertyNames[i]) {
            return static_cast<FrameProperty>(i);
        }
    }
    // Accept the shorter aliases used in the docs.
    if (name == "uniqueness") {
        return FrameProperty::UniquenessWeak;
    }
    return std::nullopt;
}

const std::vector<FrameProperty>& all_frame_properties() {
    static const std::vector<FrameProperty> props = [] {
        std::vector<FrameProperty> v;
        for (unsigned i = 0; i < kFramePropertyCount; ++i) {
            v.push_back(static_cast<FrameProperty>(i));
        }
        return v;
    }();
    return props;
}

std::vector<FrameProperty> PropertySet::to_vector() const {
    std::vector<FrameProperty> v;
    for (unsigned i = 0; i < kFramePropertyCount; ++i) {
        if (mask_ & (1u << i)) {
            v.push_back(static_cast<FrameProperty>(i));
        }
    }
    return v;
}

SelectionFunction::SelectionFunction(Algebra algebra, std::vector<Event> table)
    : algebra_(std::move(algebra)), table_(std::move(table)) {
    const std::size_t expected =
        static_cast<std::size_t>(algebra_.event_count()) * algebra_.atom_count();
    if (table_.size() != expected) {
        throw ValidationError("selection table has " + std::to_string(table_.size()) +
                              " cells, expected " + std::to_string(expected));
    }
    for (Event e : table_) {
        algebra_.require_valid(e);
    }
}

SelectionFunction SelectionFunction::filled(const Algebra& algebra, Event value) {
    algebra.require_valid(value);
    const std::size_t cells =
        static_cast<std::size_t>(algebra.event_count()) * algebra.atom_count();
    return SelectionFunction(algebra, std::vector<Event>(cells, value));
}

void SelectionFunction::set(Event a, AtomIndex alpha, Event value) {
    algebra_.require_valid(a);
    algebra_.require_valid_atom(alpha);
    algebra_.require_valid(value);
    table_[a.bits * algebra_.atom_count() + alpha] = value;
}

bool check_property(const SelectionFunction& f, FrameProperty p) {
    const Algebra& alg = f.algebra();
    const unsigned n = alg.atom_count();
    const std::uint32_t events = alg.event_count();

    switch (p) {
    case FrameProperty::Emptiness:
        for (unsigned alpha = 0; alpha < n; ++alpha) {
            if (!is_bottom(f.select(alg.bottom(), alpha))) {
                return false;
            }
        }
        return true;
    case FrameProperty::Normality:
        for (std::uint32_t a = 1; a < events; ++a) {
            for (unsigned alpha = 0; alpha < n; ++alpha) {
                if (is_bottom(f.select(Event{a}, alpha))) {
                    return false;
                }
            }
        }
        return true;
    case FrameProperty::Identity:
        for (std::uint32_t a = 0; a < events; ++a) {
            for (unsigned alpha = 0; alpha < n; ++alpha) {
                if (!leq(f.select(Event{a}, alpha), Event{a})) {
                    return false;
                }
            }
        }
        return true;
    case FrameProperty::Centering1:
        for (std::uint32_t a = 0; a < events; ++a) {
            for (unsigned alpha = 0; alpha < n; ++alpha) {
                if (contains(Event{a}, alpha) && !contains(f.select(Event{a}, alpha), alpha)) {
                    return false;
                }
            }
        }
        return true;
    case FrameProperty::Centering2:
        for (std::uint32_t a = 0; a < events; ++a) {
            for (unsigned alpha = 0; alpha < n; ++alpha) {
                if (contains(Event{a}, alpha) &&
                    !leq(f.select(Event{a}, alpha), alg.singleton(alpha))) {
                    return false;
                }
            }
        }
        return true;
    case FrameProperty::Centering:
        for (std::uint32_t a = 0; a < events; ++a) {
            for (unsigned alpha = 0; alpha < n; ++alpha) {
                if (contains(Event{a}, alpha) &&
                    f.select(Event{a}, alpha) != alg.singleton(alpha)) {
                    return false;
                }
            }
        }
        return true;
    case FrameProperty::UniquenessWeak:
        for (Event e : f.table()) {
            if (card(e) > 1) {
                return false;
            }
        }
        return true;
    case FrameProperty::UniquenessStrict:
        for (Event e : f.table()) {
            if (card(e) != 1) {
                return false;
            }
        }
        return true;
    case FrameProperty::WellOrder:
        for (std::uint32_t a = 0; a < events; ++a) {
            for (std::uint32_t b = 0; b < events; ++b) {
                for (unsigned alpha = 0; alpha < n; ++alpha) {
                    Event fa = f.select(Event{a}, alpha);
                    Event fb = f.select(Event{b}, alpha);
                    if (leq(fa, Event{b}) && leq(fb, Event{a}) && fa != fb) {
                        return false;
                    }
                }
            }
        }
        return true;
    case FrameProperty::Nesting:
        for (std::uint32_t a = 0; a < events; ++a) {
            for (std::uint32_t b = 0; b < events; ++b) {
                Event ab = join(Event{a}, Event{b});
                for (unsigned alpha = 0; alpha < n; ++alpha) {
                    Event fab = f.select(ab, alpha);
                    if (leq(fab, Event{a}) || leq(fab, Event{b})) {
                        continue;
                    }
                    if (fab != join(f.select(Event{a}, alpha), f.select(Event{b}, alpha))) {
                        return false;
                    }
                }
            }
        }
        return true;
    }
    return false;
}

PropertySet properties_of(const SelectionFunction& f) {
    PropertySet set;
    for (FrameProperty p : all_frame_properties()) {
        if (check_property(f, p)) {
            set.insert(p);
        }
    }
    return set;
}

bool strict_uniqueness_at(const SelectionFunction& f, Event a) {
    f.algebra().require_valid(a);
    for (unsigned alpha = 0; alpha < f.algebra().atom_count(); ++alpha) {
        if (card(f.select(a, alpha)) != 1) {
            return false;
        }
    }
    return true;
}

bool strict_uniqueness_above_bottom(const SelectionFunction& f) {
    const std::uint32_t events = f.algebra().event_count();
    for (std::uint32_t a = 1; a < events; ++a) {
        if (!strict_uniqueness_at(f, Event{a})) {
            return false;
        }
    }
    return true;
}

const char* conditional_class_name(ConditionalClass c) {
    switch (c) {
    case ConditionalClass::VariablyStrict:
        return "variably_strict";
    case ConditionalClass::Counterfactual:
        return "counterfactual";
    case ConditionalClass::Stalnaker:
        return "stalnaker";
    case ConditionalClass::Unclassified:
        return "unclassified";
    }
    return "unclassified";
}

Classification classify(const SelectionFunction& f) {
    Classification result;
    result.properties = properties_of(f);
    const PropertySet& props = result.properties;
    const bool variably_strict = props.contains(FrameProperty::Identity) &&
                                 props.contains(FrameProperty::WellOrder) &&
                                 props.contains(FrameProperty::Nesting);
    if (!variably_strict) {
        result.strongest = ConditionalClass::Unclassified;
        return result;
    }
    result.classes.push_back(ConditionalClass::VariablyStrict);
    result.strongest = ConditionalClass::VariablyStrict;
    if (props.contains(FrameProperty::Centering)) {
        result.classes.push_back(ConditionalClass::Counterfactual);
        result.strongest = ConditionalClass::Counterfactual;
        if (props.contains(FrameProperty::UniquenessWeak)) {
            result.classes.push_back(ConditionalClass::Stalnaker);
            result.strongest = ConditionalClass::Stalnaker;
        }
    }
    return result;
}

std::uint64_t enumeration_space_size(const Algebra& algebra, PropertySet constraints) {
    std::uint64_t total = 1;
    const std::uint32_t events = algebra.event_count();
    for (std::uint32_t a = 0; a < events; ++a) {
        for (unsigned alpha = 0; alpha < algebra.atom_count(); ++alpha) {
            total = saturating_mul(total,
                                   candidate_count(cell_constraint(algebra, constraints,
                                                                   Event{a}, alpha)));
        }
    }
    return total;
}

SelectionFunctionEnumerator::SelectionFunctionEnumerator(Algebra algebra, PropertySet constraints,
                                                         std::uint64_t budget)
    : algebra_(std::move(algebra)), constraints_(constraints) {
    space_size_ = enumeration_space_size(algebra_, constraints_);
    if (space_size_ > budget) {
        const std::string size_text =
            space_size_ == std::numeric_limits<std::uint64_t>::max()
                ? "more than 2^64 - 1"
                : std::to_string(space_size_);
        throw BudgetExceededError(
            "enumeration space of " + size_text +
            " selection functions exceeds the budget of " + std::to_string(budget) +
            " (set a smaller algebra, tighter constraints, or a larger budget)");
    }
    needs_global_filter_ = constraints_.contains(FrameProperty::WellOrder) ||
                           constraints_.contains(FrameProperty::Nesting);

    const std::uint32_t events = algebra_.event_count();
    const unsigned n = algebra_.atom_count();
    cell_candidates_.reserve(static_cast<std::size_t>(events) * n);
    for (std::uint32_t a = 0; a < events; ++a) {
        for (unsigned alpha = 0; alpha < n; ++alpha) {
            CellConstraint c = cell_constraint(algebra_, constraints_, Event{a}, alpha);
            std::vector<Event> candidates;
            for (std::uint32_t e = 0; e < events; ++e) {
                if (c.admits(Event{e})) {
                    candidates.push_back(Event{e});
                }
            }
            cell_candidates_.push_back(std::move(candidates));
        }
    }
    digits_.assign(cell_candidates_.size(), 0);
    end_ = space_size_;
    exhausted_ = space_size_ == 0;
}

bool SelectionFunctionEnumerator::assemble_current(SelectionFunction& out) const {
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        out.set(Event{static_cast<std::uint32_t>(i / algebra_.atom_count())},
                static_cast<AtomIndex>(i % algebra_.atom_count()),
                cell_candidates_[i][digits_[i]]);
    }
    return !needs_global_filter_ || passes_global(out, constraints_);
}

bool SelectionFunctionEnumerator::advance() {
    // Odometer with the last cell varying fastest.
    for (std::size_t i = digits_.size(); i-- > 0;) {
        if (++digits_[i] < cell_candidates_[i].size()) {
            return true;
        }
        digits_[i] = 0;
    }
    return false;
}

std::optional<SelectionFunction> SelectionFunctionEnumerator::next(std::uint64_t* yielded_index) {
    if (exhausted_) {
        return std::nullopt;
    }
    SelectionFunction scratch = SelectionFunction::filled(algebra_, algebra_.bottom());
    for (;;) {
        const std::uint64_t index = position();
        if (index >= end_) {
            exhausted_ = true;
            return std::nullopt;
        }
        bool keep = assemble_current(scratch);
        if (!advance()) {
            exhausted_ = true;
        }
        if (keep) {
            if (yielded_index != nullptr) {
                *yielded_index = index;
            }
            return scratch;
        }
        if (exhausted_) {
            return std::nullopt;
        }
    }
}

std::uint64_t SelectionFunctionEnumerator::position() const {
    if (exhausted_) {
        return space_size_;
    }
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        index = index * cell_candidates_[i].size() + digits_[i];
    }
    return index;
}

void SelectionFunctionEnumerator::seek(std::uint64_t index) {
    if (index >= space_size_) {
        exhausted_ = true;
        return;
    }
    exhausted_ = false;
    for (std::size_t i = digits_.size(); i-- > 0;) {
        const std::uint64_t radix = cell_candidates_[i].size();
        digits_[i] = static_cast<std::uint32_t>(index % radix);
        index /= radix;
    }
}

void SelectionFunctionEnumerator::restrict_range(std::uint64_t begin, std::uint64_t end) {
    end_ = std::min(end, space_size_);
    seek(begin);
    if (begin >= end_) {
        exhausted_ = true;
    }
}

SelectionFunction sample_selection_function(const Algebra& algebra, PropertySet constraints,
                                            std::uint64_t seed, unsigned retry_cap) {
    const std::uint32_t events = algebra.event_count();
    const unsigned n = algebra.atom_count();
    std::vector<CellConstraint> cells;
    cells.reserve(static_cast<std::size_t>(events) * n);
    for (std::uint32_t a = 0; a < events; ++a) {
        for (unsigned alpha = 0; alpha < n; ++alpha) {
            CellConstraint c = cell_constraint(algebra, constraints, Event{a}, alpha);
            if (candidate_count(c) == 0) {
                throw UnsatisfiableConstraintsError(
                    "no event satisfies the requested constraints at cell (" +
                    algebra.event_label(Event{a}) + ", " + algebra.atom_name(alpha) + ")");
            }
            cells.push_back(c);
        }
    }

    Rng rng(seed);
    const bool global = constraints.contains(FrameProperty::WellOrder) ||
                        constraints.contains(FrameProperty::Nesting);
    SelectionFunction f = SelectionFunction::filled(algebra, algebra.bottom());
    for (unsigned attempt = 0; attempt < retry_cap; ++attempt) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            f.set(Event{static_cast<std::uint32_t>(i / n)}, static_cast<AtomIndex>(i % n),
                  sample_cell(cells[i], rng));
        }
        if (!global || passes_global(f, constraints)) {
            return f;
        }
    }
    throw RetryCapExhaustedError("no table satisfying well_order/nesting found in " +
                                 std::to_string(retry_cap) + " attempts");
}

SelectionFunction sample_preorder_selection(const Algebra& algebra, std::uint64_t seed,
                                            bool centered, bool linear) {
    const unsigned n = algebra.atom_count();
    Rng rng(seed);
    SelectionFunction f = SelectionFunction::filled(algebra, algebra.bottom());
    std::vector<Event> blocks;
    std::vector<AtomIndex> order(n);
    for (unsigned alpha = 0; alpha < n; ++alpha) {
        order.clear();
        for (unsigned i = 0; i < n; ++i) {
            if (!centered || i != alpha) {
                order.push_back(i);
            }
        }
        for (std::size_t i = order.size(); i > 1; --i) {
            std::swap(order[i - 1], order[rng.below(i)]);
        }

        blocks.clear();
        if (centered) {
            blocks.push_back(algebra.singleton(alpha));
        }
        Event current{0};
        for (std::size_t i = 0; i < order.size(); ++i) {
            current = join(current, algebra.singleton(order[i]));
            const bool cut = linear || i + 1 == order.size() || (rng.next() & 1u);
            if (cut) {
                blocks.push_back(current);
                current = Event{0};
            }
        }

        for (std::uint32_t a = 0; a < algebra.event_count(); ++a) {
            Event selected{0};
            for (Event block : blocks) {
                Event hit = meet(block, Event{a});
                if (!is_bottom(hit)) {
                    selected = hit;
                    break;
                }
            }
            f.set(Event{a}, alpha, selected);
        }
    }
    return f;
}

SelectionFunction sample_stalnaker_selection(const Algebra& algebra, std::uint64_t seed) {
    return sample_preorder_selection(algebra, seed, /*centered=*/true, /*linear=*/true);
}

} // namespace imago
