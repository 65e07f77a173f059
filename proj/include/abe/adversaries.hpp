#pragma once

#include "abe/game.hpp"

namespace abe {

// Baseline adversaries for harness calibration. All three fix the challenge
// policies "attr0 = value0" versus "attr0 = value1" (the first universe
// attribute needs at least two values).

// Ignores everything and flips a coin. Advantage ~ 0.
class RandomGuessAdversary : public Adversary {
public:
    std::pair<Policy, Policy> choose_policies(const UniversePtr& universe,
                                              Rng& rng) override;
    std::pair<GTElement, GTElement> choose_messages(const ParamsPtr& params,
                                                    Rng& rng) override;
    int guess(const Ciphertext& challenge, Rng& rng) override;
};

// Compares the serialized challenge length against reference encryptions
// under both challenge policies. Shape hiding makes the lengths equal, so
// this degrades to a coin flip.
class LengthInspectorAdversary : public Adversary {
public:
    std::pair<Policy, Policy> choose_policies(const UniversePtr& universe,
                                              Rng& rng) override;
    void receive_public_key(const PublicKey& pk) override;
    std::pair<GTElement, GTElement> choose_messages(const ParamsPtr& params,
                                                    Rng& rng) override;
    int guess(const Ciphertext& challenge, Rng& rng) override;

private:
    std::optional<PublicKey> pk_;
    std::optional<Policy> w0_, w1_;
};

// Reads discrete logs straight out of transparent-backend elements and
// tests which policy's allowed-slot pattern the challenge components fit.
// A real distinguisher; validates that the harness detects one.
class DlogAdversary : public Adversary {
public:
    std::pair<Policy, Policy> choose_policies(const UniversePtr& universe,
                                              Rng& rng) override;
    void receive_public_key(const PublicKey& pk) override;
    std::pair<GTElement, GTElement> choose_messages(const ParamsPtr& params,
                                                    Rng& rng) override;
    int guess(const Ciphertext& challenge, Rng& rng) override;

private:
    std::optional<PublicKey> pk_;
    std::optional<Policy> w0_, w1_;
};

}  // namespace abe
