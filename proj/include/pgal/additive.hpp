#pragma once

#include "pgal/finring.hpp"
#include "pgal/groups.hpp"

#include <vector>

namespace pgal {

using AdditiveStructure = AbelianStructure<elem>;

/// The additive group of `members` (a subgroup of (R, +)).
inline AdditiveStructure additive_structure(const RingPtr& ring, std::vector<elem> members) {
    return AdditiveStructure(std::move(members), [ring](const elem& a, const elem& b) { return ring->add(a, b); },
                             ring->zero());
}

inline AdditiveStructure additive_structure(const RingPtr& ring) {
    std::vector<elem> all(ring->order());
    for (elem x = 0; x < ring->order(); ++x) all[x] = x;
    return additive_structure(ring, std::move(all));
}

/// Concatenation of per-block coordinates.
inline void append_coords(Coords& out, const Coords& part) { out.insert(out.end(), part.begin(), part.end()); }

}  // namespace pgal
