#include "bairex/separation.hpp"

namespace bairex {

SeparatingSet separate(const AmbientSpace& space, const SubsetMask& m, const SubsetMask& n,
                       ClassLabel label) {
    if (m.space_size() != space.size() || n.space_size() != space.size())
        throw ValidationError("separate: subsets must index the same space");
    if (m.intersects(n))
        throw ValidationError("separate: M and N must be disjoint");

    SeparatingSet h{SubsetMask(space.size()), label};
    for (PointId x = 0; x < space.size(); ++x)
        if (space.distance_to_set(x, m) < space.distance_to_set(x, n)) h.members.add(x);
    return h;
}

SeparatingSet set_complement(const AmbientSpace& space, const SeparatingSet& h) {
    if (h.members.space_size() != space.size())
        throw ValidationError("set_complement: subset must index the same space");
    return SeparatingSet{h.members.complemented(), h.label};
}

}  // namespace bairex
