#pragma once

#include <optional>
#include <vector>

#include "abe/pairing.hpp"
#include "abe/policy.hpp"
#include "abe/shares.hpp"

namespace abe {

// CP-ABE with hidden access policies. The ciphertext carries one component
// pair per (attribute, value) slot of the universe regardless of the policy:
// allowed slots encode the attribute's secret share, disallowed slots hold
// random decoy pairs of identical shape. Decryption is blind; a hash tag
// over the recovered G_T message tells the decryptor whether a candidate
// reconstruction succeeded.

struct PublicKey {
    ParamsPtr params;
    UniversePtr universe;
    GTElement y;                   // e(g,g)^alpha
    std::vector<GElement> t;       // T_{i,t} in (i, t) slot order

    const GElement& t_at(std::size_t attr, std::size_t value) const;

    Bytes serialize() const;
    static PublicKey deserialize(std::span<const std::uint8_t> data);
};

struct MasterKey {
    ParamsPtr params;
    UniversePtr universe;
    Scalar alpha;
    std::vector<Scalar> a;         // a_{i,t} in slot order

    const Scalar& a_at(std::size_t attr, std::size_t value) const;

    Bytes serialize() const;
    static MasterKey deserialize(std::span<const std::uint8_t> data);
};

struct SecretKey {
    ParamsPtr params;
    UniversePtr universe;
    AttributeList attributes;
    GElement d0;                   // g^{alpha - r}
    std::vector<GElement> d1;      // g^{r + lambda_i a_{i,t_i}}, one per attribute
    std::vector<GElement> d2;      // g^{lambda_i}

    Bytes serialize() const;
    static SecretKey deserialize(std::span<const std::uint8_t> data);
};

struct Ciphertext {
    ParamsPtr params;
    UniversePtr universe;
    GTElement c;                   // M * Y^s
    GElement c0;                   // g^s
    std::vector<GElement> comp1;   // C_{i,t,1} in slot order
    std::vector<GElement> comp2;   // C_{i,t,2} in slot order
    Digest tag;                    // H("ABE-TAG" || serialize(M))

    std::size_t slot_index(std::size_t attr, std::size_t value) const;

    Bytes serialize() const;
    static Ciphertext deserialize(std::span<const std::uint8_t> data);
};

struct NotSatisfiedError : Error {
    using Error::Error;
};

std::pair<PublicKey, MasterKey> setup(UniversePtr universe, ParamsPtr params,
                                      Rng& rng);

SecretKey keygen(const MasterKey& mk, const AttributeList& attributes, Rng& rng);

// The policy is normalized internally; it need not mention every attribute.
Ciphertext encrypt(const PublicKey& pk, const GTElement& message,
                   const Policy& policy, Rng& rng);

struct DecryptStats {
    std::size_t candidates_tried = 0;
};

// Blind decryption: tries the full attribute set first, then every smaller
// non-empty subset (decreasing size, ascending mask within a size), and
// accepts the first candidate whose message matches the ciphertext tag.
// Returns nullopt when no subset reconstructs the message.
std::optional<GTElement> decrypt(const SecretKey& sk, const Ciphertext& ct,
                                 unsigned max_attrs_for_search = 20,
                                 DecryptStats* stats = nullptr);

// Policy-aware oracle: reconstructs via the pruned sets of the true policy
// instead of searching. Agrees with decrypt() on every instance.
std::optional<GTElement> decrypt_with_policy(const SecretKey& sk,
                                             const Ciphertext& ct,
                                             const Policy& policy);

Digest message_tag(const GTElement& message);

}  // namespace abe
