#include "abe/adversaries.hpp"

namespace abe {

namespace {

std::pair<Policy, Policy> single_value_pair(const UniversePtr& universe) {
    if (universe->value_count(0) < 2)
        throw Error("first attribute needs at least two values");
    PolicyNode l0 = PolicyNode::leaf(0, {0});
    PolicyNode l1 = PolicyNode::leaf(0, {1});
    return {Policy(universe, std::move(l0)), Policy(universe, std::move(l1))};
}

std::pair<GTElement, GTElement> two_random_messages(const ParamsPtr& params,
                                                    Rng& rng) {
    GTElement m0 = random_gt(params, rng);
    GTElement m1 = random_gt(params, rng);
    while (m1 == m0) m1 = random_gt(params, rng);
    return {std::move(m0), std::move(m1)};
}

// Per-attribute allowed sets of the normalized policy.
std::vector<std::set<std::size_t>> allowed_sets(const Policy& policy) {
    Policy w = normalize(policy);
    std::vector<std::set<std::size_t>> out(w.universe()->attr_count());
    auto walk = [&](auto&& self, const PolicyNode& node) -> void {
        if (node.kind == PolicyNode::Kind::Leaf) {
            out[node.attr] = node.allowed_values;
            return;
        }
        for (const auto& c : node.children) self(self, c);
    };
    walk(walk, w.root());
    return out;
}

}  // namespace

std::pair<Policy, Policy> RandomGuessAdversary::choose_policies(
    const UniversePtr& universe, Rng&) {
    return single_value_pair(universe);
}

std::pair<GTElement, GTElement> RandomGuessAdversary::choose_messages(
    const ParamsPtr& params, Rng& rng) {
    return two_random_messages(params, rng);
}

int RandomGuessAdversary::guess(const Ciphertext&, Rng& rng) {
    return static_cast<int>(rng.next_u64() & 1);
}

std::pair<Policy, Policy> LengthInspectorAdversary::choose_policies(
    const UniversePtr& universe, Rng&) {
    auto [w0, w1] = single_value_pair(universe);
    w0_ = w0;
    w1_ = w1;
    return {std::move(w0), std::move(w1)};
}

void LengthInspectorAdversary::receive_public_key(const PublicKey& pk) {
    pk_ = pk;
}

std::pair<GTElement, GTElement> LengthInspectorAdversary::choose_messages(
    const ParamsPtr& params, Rng& rng) {
    return two_random_messages(params, rng);
}

int LengthInspectorAdversary::guess(const Ciphertext& challenge, Rng& rng) {
    GTElement probe = random_gt(pk_->params, rng);
    std::size_t len0 = encrypt(*pk_, probe, *w0_, rng).serialize().size();
    std::size_t len1 = encrypt(*pk_, probe, *w1_, rng).serialize().size();
    std::size_t len = challenge.serialize().size();
    if (len0 != len1) return len == len0 ? 0 : 1;
    return static_cast<int>(rng.next_u64() & 1);
}

std::pair<Policy, Policy> DlogAdversary::choose_policies(
    const UniversePtr& universe, Rng&) {
    auto [w0, w1] = single_value_pair(universe);
    w0_ = w0;
    w1_ = w1;
    return {std::move(w0), std::move(w1)};
}

void DlogAdversary::receive_public_key(const PublicKey& pk) { pk_ = pk; }

std::pair<GTElement, GTElement> DlogAdversary::choose_messages(
    const ParamsPtr& params, Rng& rng) {
    return two_random_messages(params, rng);
}

int DlogAdversary::guess(const Ciphertext& challenge, Rng& rng) {
    const auto& universe = *pk_->universe;
    const ParamsPtr& params = pk_->params;

    // Slot (i,t) carries a real share iff C2 = C1^{a_{i,t}}; on transparent
    // dlog reps that is rep(C2) = rep(C1) * rep(T_{i,t}) mod p. Decoys pass
    // only with probability 1/p. Count pattern mismatches against each policy.
    auto mismatches = [&](const Policy& w) {
        auto allowed = allowed_sets(w);
        std::size_t bad = 0;
        for (std::size_t i = 0; i < universe.attr_count(); ++i) {
            for (std::size_t t = 0; t < universe.value_count(i); ++t) {
                std::size_t slot = challenge.slot_index(i, t);
                Scalar c1(params, challenge.comp1[slot].rep());
                Scalar t_it(params, pk_->t_at(i, t).rep());
                bool consistent = challenge.comp2[slot].rep() == c1.mul(t_it).value();
                bool expected = allowed[i].count(t) > 0;
                if (consistent != expected) ++bad;
            }
        }
        return bad;
    };

    std::size_t bad0 = mismatches(*w0_);
    std::size_t bad1 = mismatches(*w1_);
    if (bad0 < bad1) return 0;
    if (bad1 < bad0) return 1;
    return static_cast<int>(rng.next_u64() & 1);
}

}  // namespace abe
