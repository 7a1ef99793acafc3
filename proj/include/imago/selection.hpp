#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "imago/algebra.hpp"
#include "imago/rng.hpp"

namespace imago {

/// Structural constraints a selection function may satisfy. UniquenessWeak
/// means every cell has at most one atom, UniquenessStrict exactly one atom
/// (over all cells, including the bottom antecedent).
enum class FrameProperty : unsigned {
    Emptiness,
    Normality,
    Identity,
    Centering1,
    Centering2,
    Centering,
    UniquenessWeak,
    UniquenessStrict,
    WellOrder,
    Nesting,
};

constexpr unsigned kFramePropertyCount = 10;

const char* property_name(FrameProperty p);
std::optional<FrameProperty> parse_property(const std::string& name);
const std::vector<FrameProperty>& all_frame_properties();

/// Set of frame properties, packed.
class PropertySet {
public:
    PropertySet() = default;
    PropertySet(std::initializer_list<FrameProperty> props) {
        for (FrameProperty p : props) {
            insert(p);
        }
    }

    bool contains(FrameProperty p) const { return (mask_ >> static_cast<unsigned>(p)) & 1u; }
    void insert(FrameProperty p) { mask_ |= std::uint16_t(1u << static_cast<unsigned>(p)); }
    void erase(FrameProperty p) { mask_ &= std::uint16_t(~(1u << static_cast<unsigned>(p))); }
    bool empty() const { return mask_ == 0; }

    std::vector<FrameProperty> to_vector() const;

    friend bool operator==(PropertySet, PropertySet) = default;

private:
    std::uint16_t mask_ = 0;
};

/// Total table f : A x at(A) -> A, stored dense with cell (a, alpha) at
/// index a.bits * n + alpha. Treat as immutable once built; the mutating
/// setters exist for builders and file loading.
class SelectionFunction {
public:
    SelectionFunction(Algebra algebra, std::vector<Event> table);

    /// Constant table, every cell set to value.
    static SelectionFunction filled(const Algebra& algebra, Event value);

    const Algebra& algebra() const { return algebra_; }

    Event select(Event a, AtomIndex alpha) const {
        return table_[a.bits * algebra_.atom_count() + alpha];
    }

    void set(Event a, AtomIndex alpha, Event value);

    const std::vector<Event>& table() const { return table_; }
    std::size_t cell_count() const { return table_.size(); }

    friend bool operator==(const SelectionFunction& lhs, const SelectionFunction& rhs) {
        return lhs.algebra_ == rhs.algebra_ && lhs.table_ == rhs.table_;
    }

private:
    Algebra algebra_;
    std::vector<Event> table_;
};

/// Quantified structural check of one property over the whole table.
bool check_property(const SelectionFunction& f, FrameProperty p);

/// All properties holding of f.
PropertySet properties_of(const SelectionFunction& f);

/// Every cell at this antecedent holds exactly one atom.
bool strict_uniqueness_at(const SelectionFunction& f, Event a);

/// Exactly-one-atom cells at every antecedent except bottom. This is the
/// uniqueness notion the update-equality theorem turns on: the bottom row
/// never takes part in an update.
bool strict_uniqueness_above_bottom(const SelectionFunction& f);

enum class ConditionalClass {
    VariablyStrict,
    Counterfactual,
    Stalnaker,
    Unclassified,
};

const char* conditional_class_name(ConditionalClass c);

struct Classification {
    PropertySet properties;
    /// Classes that hold, weakest first; empty when unclassified.
    std::vector<ConditionalClass> classes;
    ConditionalClass strongest = ConditionalClass::Unclassified;
};

/// VariablyStrict = identity + well-order + nesting; Counterfactual adds
/// centering; Stalnaker adds weak uniqueness.
Classification classify(const SelectionFunction& f);

constexpr std::uint64_t kDefaultEnumerationBudget = 65536;

/// Streams every total table over the algebra satisfying the constraints,
/// exactly once, ordered lexicographically over the flattened table (cell
/// (a, alpha) at index a.bits * n + alpha, later cells varying fastest,
/// cell values ascending by bitmask).
///
/// Locally decidable constraints restrict each cell's candidate list up
/// front; well-order and nesting are filtered after assembly. The candidate
/// space size (product of per-cell list lengths) must not exceed the budget,
/// otherwise the constructor throws BudgetExceededError naming the bound.
class SelectionFunctionEnumerator {
public:
    SelectionFunctionEnumerator(Algebra algebra, PropertySet constraints,
                                std::uint64_t budget = kDefaultEnumerationBudget);

    /// Next function in stream order, or nullopt when exhausted. When
    /// yielded_index is non-null it receives the candidate index of the
    /// returned table, stable across range splits.
    std::optional<SelectionFunction> next(std::uint64_t* yielded_index = nullptr);

    /// Candidate-space size before global filtering.
    std::uint64_t space_size() const { return space_size_; }

    /// Position in [0, space_size()]: index of the next candidate to visit.
    std::uint64_t position() const;

    /// Restricts the stream to candidate indices in [begin, end); workers
    /// own disjoint ranges of the same stream.
    void restrict_range(std::uint64_t begin, std::uint64_t end);

private:
    bool assemble_current(SelectionFunction& out) const;
    bool advance();
    void seek(std::uint64_t index);

    Algebra algebra_;
    PropertySet constraints_;
    std::vector<std::vector<Event>> cell_candidates_;
    std::vector<std::uint32_t> digits_;
    std::uint64_t space_size_ = 0;
    std::uint64_t end_ = 0;
    bool exhausted_ = false;
    bool needs_global_filter_ = false;
};

/// Count of tables the enumerator would stream before global filtering,
/// without constructing it. Saturates at UINT64_MAX.
std::uint64_t enumeration_space_size(const Algebra& algebra, PropertySet constraints);

constexpr unsigned kDefaultSampleRetryCap = 10000;

/// Seed-deterministic sampler: each cell is drawn uniformly among the events
/// its local constraints allow; well-order and nesting, which span cells,
/// are handled by whole-table rejection up to retry_cap attempts.
///
/// Throws UnsatisfiableConstraintsError when some cell has no admissible
/// event, RetryCapExhaustedError when rejection gives up.
SelectionFunction sample_selection_function(const Algebra& algebra, PropertySet constraints,
                                            std::uint64_t seed,
                                            unsigned retry_cap = kDefaultSampleRetryCap);

/// Constructive sampler over closeness preorders: draws one ordered partition
/// of the atoms per world and selects the first block meeting the antecedent.
/// The result always satisfies emptiness, normality, identity, well-order and
/// nesting. With linear orders every selected set is a singleton; with
/// centered orders the world itself comes first, giving centering.
SelectionFunction sample_preorder_selection(const Algebra& algebra, std::uint64_t seed,
                                            bool centered, bool linear);

/// Centered linear-order sampler; classify() puts the result in the
/// Stalnaker class, and every nonbottom cell is a singleton.
SelectionFunction sample_stalnaker_selection(const Algebra& algebra, std::uint64_t seed);

} // namespace imago
