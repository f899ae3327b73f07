#pragma once

#include "bairex/space.hpp"

namespace bairex {

// Subset produced by the separation oracle, tagged with the class label of
// the run that requested it.
struct SeparatingSet {
    SubsetMask members;
    ClassLabel label;

    friend bool operator==(const SeparatingSet&, const SeparatingSet&) = default;
};

// Separates two disjoint subsets by nearest-set distance:
//
//     H = { x : d(x, M) < d(x, N) }
//
// The strict inequality makes M a subset of H (d(m, M) = 0 beats any positive
// distance) and keeps N disjoint from H, with equidistant points excluded.
// Empty sets resolve through the +infinity sentinel of distance_to_set:
// M empty gives H empty, M nonempty with N empty gives H = the whole space.
// Throws ValidationError when M and N overlap.
SeparatingSet separate(const AmbientSpace& space, const SubsetMask& m, const SubsetMask& n,
                       ClassLabel label);

// Complement within the space, same label.
SeparatingSet set_complement(const AmbientSpace& space, const SeparatingSet& h);

}  // namespace bairex
