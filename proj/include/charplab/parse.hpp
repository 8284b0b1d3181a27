#pragma once

#include <string_view>

#include "charplab/polynomial.hpp"

namespace charplab {

/// Parses the ASCII polynomial grammar
///
///   poly := term (('+'|'-') term)*
///   term := atom ('*' atom)*
///   atom := integer | 'g' ('^' nat)? | var ('^' nat)?
///
/// Whitespace is ignored, integers are reduced mod p and 'g' is the field
/// generator (only when m > 1). A single leading sign is accepted so that
/// printed polynomials with a negative leading coefficient parse back.
/// Throws ParseError carrying the offending position.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

}  // namespace charplab
