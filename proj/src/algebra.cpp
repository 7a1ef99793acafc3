#include "imago/algebra.hpp"

#include <unordered_set>

#include "imago/errors.hpp"

namespace imago {

namespace {

std::vector<std::string> default_names(unsigned atom_count) {
    std::vector<std::string> names;
    names.reserve(atom_count);
    for (unsigned i = 0; i < atom_count; ++i) {
        names.push_back("a" + std::to_string(i + 1));
    }
    return names;
}

} // namespace

Algebra::Algebra(unsigned atom_count) : Algebra(default_names(atom_count)) {}

Algebra::Algebra(std::vector<std::string> atom_names)
    : atom_count_(static_cast<unsigned>(atom_names.size())),
      atom_names_(std::move(atom_names)) {
    if (atom_count_ < 1 || atom_count_ > kMaxAtoms) {
        throw ValidationError("atom count must be in [1, " + std::to_string(kMaxAtoms) +
                              "], got " + std::to_string(atom_count_));
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : atom_names_) {
        if (name.empty()) {
            throw ValidationError("atom names must be non-empty");
        }
        if (name.find(',') != std::string::npos) {
            // Commas separate atom names in event keys of the model format.
            throw ValidationError("atom name '" + name + "' must not contain a comma");
        }
        if (!seen.insert(name).second) {
            throw ValidationError("duplicate atom name '" + name + "'");
        }
    }
    mask_ = (atom_count_ == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << atom_count_) - 1);
}

void Algebra::require_valid(Event x) const {
    if (!valid(x)) {
        throw InvalidEventError("event mask " + std::to_string(x.bits) + " overflows algebra with " +
                                std::to_string(atom_count_) + " atoms");
    }
}

void Algebra::require_valid_atom(AtomIndex atom) const {
    if (atom >= atom_count_) {
        throw InvalidEventError("atom index " + std::to_string(atom) + " out of range [0, " +
                                std::to_string(atom_count_) + ")");
    }
}

Event Algebra::singleton(AtomIndex atom) const {
    require_valid_atom(atom);
    return Event{std::uint32_t{1} << atom};
}

Connectives Algebra::connectives(Event x, Event y) const {
    require_valid(x);
    require_valid(y);
    return Connectives{meet(x, y), join(x, y), complement_of(x), implication(x, y)};
}

std::vector<AtomIndex> Algebra::atoms_of(Event x) const {
    require_valid(x);
    std::vector<AtomIndex> atoms;
    atoms.reserve(card(x));
    for (unsigned i = 0; i < atom_count_; ++i) {
        if (contains(x, i)) {
            atoms.push_back(i);
        }
    }
    return atoms;
}

AtomIndex Algebra::least_atom(Event x) const {
    require_valid(x);
    if (is_bottom(x)) {
        throw DomainError("least_atom of bottom");
    }
    return static_cast<AtomIndex>(std::countr_zero(x.bits));
}

std::string Algebra::event_label(Event x) const {
    require_valid(x);
    std::string out = "{";
    bool first = true;
    for (unsigned i = 0; i < atom_count_; ++i) {
        if (contains(x, i)) {
            if (!first) {
                out += ",";
            }
            out += atom_names_[i];
            first = false;
        }
    }
    out += "}";
    return out;
}

Event Algebra::event_of(const std::vector<AtomIndex>& atoms) const {
    Event e{0};
    for (AtomIndex a : atoms) {
        require_valid_atom(a);
        e.bits |= std::uint32_t{1} << a;
    }
    return e;
}

AtomIndex Algebra::atom_index(const std::string& name) const {
    for (unsigned i = 0; i < atom_count_; ++i) {
        if (atom_names_[i] == name) {
            return i;
        }
    }
    throw ParseError("unknown atom '" + name + "'");
}

} // namespace imago
