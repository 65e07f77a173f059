#include "abe/hybrid.hpp"

#include "abe/hash.hpp"

namespace abe {

namespace {

constexpr std::string_view kMagic = "ABHY";
constexpr std::uint8_t kVersion = 0x01;
constexpr std::uint8_t kAlgHashStream = 0x01;

Digest derive_dek(const GTElement& m) {
    return sha256_labeled("ABE-KDF", serialize_element(m));
}

void xor_keystream(Bytes& data, const Digest& dek,
                   const std::array<std::uint8_t, 16>& nonce) {
    // block j = H(dek || nonce || j), j a big-endian 64-bit counter
    for (std::size_t off = 0, j = 0; off < data.size(); off += 32, ++j) {
        Bytes block_input(dek.begin(), dek.end());
        append_bytes(block_input, nonce);
        append_u64(block_input, j);
        Digest block = sha256(block_input);
        for (std::size_t k = 0; k < 32 && off + k < data.size(); ++k)
            data[off + k] ^= block[k];
    }
}

Digest compute_mac(const Digest& dek, std::uint8_t algorithm,
                   const std::array<std::uint8_t, 16>& nonce, const Bytes& body) {
    Bytes input(dek.begin(), dek.end());
    append_u8(input, algorithm);
    append_bytes(input, nonce);
    append_bytes(input, body);
    return sha256_labeled("ABE-MAC", input);
}

}  // namespace

HybridCiphertext hybrid_encrypt(const PublicKey& pk, const Policy& policy,
                                std::span<const std::uint8_t> plaintext, Rng& rng) {
    GTElement m = random_gt(pk.params, rng);
    Ciphertext kem = encrypt(pk, m, policy, rng);

    std::array<std::uint8_t, 16> nonce{};
    for (std::size_t i = 0; i < nonce.size(); i += 8) {
        std::uint64_t v = rng.next_u64();
        for (std::size_t k = 0; k < 8; ++k)
            nonce[i + k] = static_cast<std::uint8_t>(v >> (8 * (7 - k)));
    }

    Digest dek = derive_dek(m);
    Bytes body(plaintext.begin(), plaintext.end());
    xor_keystream(body, dek, nonce);
    Digest mac = compute_mac(dek, kAlgHashStream, nonce, body);
    return {std::move(kem), kAlgHashStream, nonce, std::move(body), mac};
}

Bytes hybrid_decrypt(const SecretKey& sk, const HybridCiphertext& ct,
                     unsigned max_attrs_for_search, DecryptStats* stats) {
    if (ct.algorithm != kAlgHashStream)
        throw FormatError("unrecognized DEM algorithm id");
    auto m = decrypt(sk, ct.kem, max_attrs_for_search, stats);
    if (!m) throw NotSatisfiedError("not satisfied or wrong key");
    Digest dek = derive_dek(*m);
    if (compute_mac(dek, ct.algorithm, ct.nonce, ct.body) != ct.mac)
        throw IntegrityError("MAC mismatch");
    Bytes plain = ct.body;
    xor_keystream(plain, dek, ct.nonce);
    return plain;
}

Bytes HybridCiphertext::serialize() const {
    Bytes out;
    append_str(out, kMagic);
    append_u8(out, kVersion);
    Bytes kem_bytes = kem.serialize();
    append_u32(out, static_cast<std::uint32_t>(kem_bytes.size()));
    append_bytes(out, kem_bytes);
    append_u8(out, algorithm);
    append_bytes(out, nonce);
    append_u64(out, body.size());
    append_bytes(out, body);
    append_bytes(out, mac);
    return out;
}

HybridCiphertext HybridCiphertext::deserialize(std::span<const std::uint8_t> data) {
    ByteReader in(data);
    in.expect_magic(kMagic);
    if (in.u8() != kVersion) throw FormatError("unsupported container version");
    std::uint32_t kem_len = in.u32();
    Ciphertext kem = Ciphertext::deserialize(in.take(kem_len));
    std::uint8_t algorithm = in.u8();
    std::array<std::uint8_t, 16> nonce{};
    auto nb = in.take(nonce.size());
    std::copy(nb.begin(), nb.end(), nonce.begin());
    std::uint64_t body_len = in.u64();
    if (body_len > in.remaining()) throw FormatError("truncated body");
    auto bb = in.take(body_len);
    Bytes body(bb.begin(), bb.end());
    Digest mac{};
    auto mb = in.take(mac.size());
    std::copy(mb.begin(), mb.end(), mac.begin());
    if (!in.done()) throw FormatError("trailing bytes in container");
    return {std::move(kem), algorithm, nonce, std::move(body), mac};
}

}  // namespace abe
