#pragma once

#include <cstdint>
#include <vector>

#include "abe/pairing.hpp"
#include "abe/policy.hpp"

namespace abe {

// Leaf shares from the top-down assignment over a normalized policy tree:
// an AND node splits its value additively across children (random draws,
// last child forced to close the sum mod p), an OR node copies its value to
// every child. Normalized policies have exactly one leaf per attribute, so
// shares are keyed by attribute index.
struct ShareMap {
    Scalar secret;
    std::vector<Scalar> shares;  // index = attribute index

    const Scalar& share(std::size_t attr) const { return shares.at(attr); }
};

// Attribute-index set of one minimal satisfying subtree, as a bitmask.
// Universes are capped at 64 attributes (far above the search bound).
using PrunedSet = std::uint64_t;

ShareMap assign_shares(const Policy& policy, const Scalar& secret, Rng& rng);

// Enumerates the pruned sets of `policy` under `list`: satisfied leaf gives
// {attr}; AND crosses one set per child; OR concatenates satisfied children.
// Empty result exactly when the list does not satisfy the policy.
// Deduplicated; deterministic order (larger sets first, then by mask value).
std::vector<PrunedSet> pruned_sets(const Policy& policy, const AttributeList& list);

// True iff the shares indexed by `set` sum to the root secret mod p.
bool verify_reconstruction(const ShareMap& shares, PrunedSet set);

}  // namespace abe
