#pragma once

#include <gmpxx.h>

#include <string>

namespace imago {

/// Exact rational number. All probability arithmetic in the library is exact;
/// floating point appears only in display helpers.
using Rat = mpq_class;

/// Canonicalized rational from an integer pair. Throws DomainError on den == 0.
Rat make_rat(long num, long den);

/// Parses "p/q" or a plain integer "p". Throws ParseError on malformed input
/// or zero denominator.
Rat parse_rat(const std::string& text);

/// Serializes as "p/q" with an explicit denominator, e.g. "1/2", "3/1", "-1/4".
std::string rat_str(const Rat& value);

/// Display-only conversion.
inline double rat_double(const Rat& value) { return value.get_d(); }

} // namespace imago
