#include "abe/shares.hpp"

#include <algorithm>
#include <bit>

namespace abe {

namespace {

void assign_node(const PolicyNode& node, const Scalar& value,
                 std::vector<std::optional<Scalar>>& leaf_shares, Rng& rng) {
    switch (node.kind) {
        case PolicyNode::Kind::Leaf:
            leaf_shares[node.attr] = value;
            return;
        case PolicyNode::Kind::And: {
            // Random values for all children but the last, drawn in source
            // order; the last child closes the sum. The forced value may be 0.
            std::vector<Scalar> child_values;
            Scalar sum(value.params(), 0);
            for (std::size_t c = 0; c + 1 < node.children.size(); ++c) {
                Scalar v = random_scalar(value.params(), rng);
                sum = sum.add(v);
                child_values.push_back(v);
            }
            child_values.push_back(value.sub(sum));
            for (std::size_t c = 0; c < node.children.size(); ++c)
                assign_node(node.children[c], child_values[c], leaf_shares, rng);
            return;
        }
        case PolicyNode::Kind::Or:
            for (const auto& c : node.children)
                assign_node(c, value, leaf_shares, rng);
            return;
    }
}

std::vector<PrunedSet> pruned_node(const PolicyNode& node, const AttributeList& list) {
    switch (node.kind) {
        case PolicyNode::Kind::Leaf:
            if (node.allowed_values.count(list.value_of(node.attr)))
                return {PrunedSet{1} << node.attr};
            return {};
        case PolicyNode::Kind::And: {
            std::vector<PrunedSet> acc = {0};
            for (const auto& c : node.children) {
                auto child_sets = pruned_node(c, list);
                if (child_sets.empty()) return {};
                std::vector<PrunedSet> next;
                for (auto a : acc)
                    for (auto b : child_sets) next.push_back(a | b);
                acc = std::move(next);
            }
            return acc;
        }
        case PolicyNode::Kind::Or: {
            std::vector<PrunedSet> acc;
            for (const auto& c : node.children) {
                auto child_sets = pruned_node(c, list);
                acc.insert(acc.end(), child_sets.begin(), child_sets.end());
            }
            return acc;
        }
    }
    return {};
}

}  // namespace

ShareMap assign_shares(const Policy& policy, const Scalar& secret, Rng& rng) {
    if (!policy.normalized())
        throw Error("assign_shares requires a normalized policy");
    std::size_t n = policy.universe()->attr_count();
    std::vector<std::optional<Scalar>> leaf_shares(n);
    assign_node(policy.root(), secret, leaf_shares, rng);
    ShareMap out{secret, {}};
    for (std::size_t i = 0; i < n; ++i) {
        if (!leaf_shares[i]) throw Error("normalized policy missing a leaf");
        out.shares.push_back(*leaf_shares[i]);
    }
    return out;
}

std::vector<PrunedSet> pruned_sets(const Policy& policy, const AttributeList& list) {
    if (!(*list.universe() == *policy.universe()))
        throw ParamsMismatchError("attribute list and policy universes differ");
    if (policy.universe()->attr_count() > 64)
        throw Error("universe too large for pruned-set enumeration");
    auto sets = pruned_node(policy.root(), list);
    std::sort(sets.begin(), sets.end(), [](PrunedSet a, PrunedSet b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa > pb;
        return a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return sets;
}

bool verify_reconstruction(const ShareMap& shares, PrunedSet set) {
    Scalar sum(shares.secret.params(), 0);
    for (std::size_t i = 0; i < 64; ++i) {
        if (!(set & (PrunedSet{1} << i))) continue;
        if (i >= shares.shares.size())
            throw Error("pruned set index outside share map");
        sum = sum.add(shares.shares[i]);
    }
    return sum == shares.secret;
}

}  // namespace abe
