#pragma once

#include <array>

#include "abe/scheme.hpp"

namespace abe {

struct IntegrityError : Error {
    using Error::Error;
};

// Hybrid container: the ABE layer encapsulates a random G_T element, a hash
// keystream DEM encrypts the file bytes, a hash MAC authenticates header and
// body. MAC failure releases no plaintext.
struct HybridCiphertext {
    Ciphertext kem;
    std::uint8_t algorithm = 0x01;          // hash-counter keystream + hash MAC
    std::array<std::uint8_t, 16> nonce{};
    Bytes body;
    Digest mac{};

    Bytes serialize() const;
    static HybridCiphertext deserialize(std::span<const std::uint8_t> data);
};

HybridCiphertext hybrid_encrypt(const PublicKey& pk, const Policy& policy,
                                std::span<const std::uint8_t> plaintext, Rng& rng);

// Throws NotSatisfiedError when the key's attributes do not satisfy the
// hidden policy, IntegrityError on MAC mismatch.
Bytes hybrid_decrypt(const SecretKey& sk, const HybridCiphertext& ct,
                     unsigned max_attrs_for_search = 20,
                     DecryptStats* stats = nullptr);

}  // namespace abe
