#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace imago {

/// Element of a finite Boolean algebra over at most 16 atoms, encoded as a
/// bitmask: bit i set iff atom i belongs to the event. Bottom is 0, top is
/// 2^n - 1. Plain value, no interning.
struct Event {
    std::uint32_t bits = 0;

    friend constexpr bool operator==(Event, Event) = default;
    friend constexpr auto operator<=>(Event, Event) = default;
};

using AtomIndex = unsigned;

/// Result bundle of the four basic connectives on a pair of events.
struct Connectives {
    Event meet;
    Event join;
    Event complement_x;
    Event implication;
};

inline Event meet(Event x, Event y) { return Event{x.bits & y.bits}; }
inline Event join(Event x, Event y) { return Event{x.bits | y.bits}; }

/// Lattice order: x below y.
inline bool leq(Event x, Event y) { return (x.bits & y.bits) == x.bits; }

inline bool contains(Event x, AtomIndex atom) { return (x.bits >> atom) & 1u; }

/// Number of atoms below the event.
inline unsigned card(Event x) { return static_cast<unsigned>(std::popcount(x.bits)); }

inline bool is_bottom(Event x) { return x.bits == 0; }

constexpr unsigned kMaxAtoms = 16;

/// Finite Boolean algebra identified with the powerset of its atom set.
/// Atom names are display-only; bit i always maps to atom i.
class Algebra {
public:
    /// Atoms named "a1".."an".
    explicit Algebra(unsigned atom_count);
    explicit Algebra(std::vector<std::string> atom_names);

    unsigned atom_count() const { return atom_count_; }
    const std::vector<std::string>& atom_names() const { return atom_names_; }
    const std::string& atom_name(AtomIndex atom) const { return atom_names_[atom]; }

    Event bottom() const { return Event{0}; }
    Event top() const { return Event{mask_}; }
    std::uint32_t full_mask() const { return mask_; }

    /// Number of elements of the algebra, 2^n.
    std::uint32_t event_count() const { return mask_ + 1; }

    bool valid(Event x) const { return x.bits <= mask_; }
    void require_valid(Event x) const;
    void require_valid_atom(AtomIndex atom) const;

    Event complement_of(Event x) const { return Event{~x.bits & mask_}; }

    /// Material implication x -> y = not x or y.
    Event implication(Event x, Event y) const { return Event{(~x.bits & mask_) | y.bits}; }

    /// Pointwise biconditional, the complement of the symmetric difference.
    Event biconditional(Event x, Event y) const { return Event{~(x.bits ^ y.bits) & mask_}; }

    Event singleton(AtomIndex atom) const;

    /// All four connectives at once; validates both operands.
    Connectives connectives(Event x, Event y) const;

    /// Ascending indices of the atoms below x.
    std::vector<AtomIndex> atoms_of(Event x) const;

    /// Index of the least atom below x; x must be nonempty.
    AtomIndex least_atom(Event x) const;

    /// Render as "{a2,a3}", "{}" for bottom.
    std::string event_label(Event x) const;

    /// Event from atom indices.
    Event event_of(const std::vector<AtomIndex>& atoms) const;

    /// Index of a named atom; throws ParseError if unknown.
    AtomIndex atom_index(const std::string& name) const;

    friend bool operator==(const Algebra& a, const Algebra& b) {
        return a.atom_names_ == b.atom_names_;
    }

private:
    unsigned atom_count_;
    std::uint32_t mask_;
    std::vector<std::string> atom_names_;
};

} // namespace imago
