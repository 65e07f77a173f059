#include "abe/scheme.hpp"

#include <algorithm>

#include "abe/hash.hpp"

namespace abe {

namespace {

constexpr std::uint8_t kVersion = 0x01;

std::size_t slot_offset(const Universe& universe, std::size_t attr) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < attr; ++i) off += universe.value_count(i);
    return off;
}

void append_header(Bytes& out, std::string_view magic, const GroupParams& params,
                   const Universe& universe) {
    append_str(out, magic);
    append_u8(out, kVersion);
    params.serialize(out);
    std::string text = universe.canonical_text();
    append_u32(out, static_cast<std::uint32_t>(text.size()));
    append_str(out, text);
    Digest d = universe.digest();
    append_bytes(out, d);
}

struct Header {
    ParamsPtr params;
    UniversePtr universe;
};

Header read_header(ByteReader& in, std::string_view magic) {
    in.expect_magic(magic);
    if (in.u8() != kVersion) throw FormatError("unsupported artifact version");
    ParamsPtr params = GroupParams::deserialize(in);
    std::uint32_t len = in.u32();
    auto text_bytes = in.take(len);
    std::string text(text_bytes.begin(), text_bytes.end());
    UniversePtr universe = Universe::parse(text);
    Digest stored;
    auto db = in.take(stored.size());
    std::copy(db.begin(), db.end(), stored.begin());
    if (stored != universe->digest())
        throw FormatError("universe digest mismatch");
    return {std::move(params), std::move(universe)};
}

void require_bound(const ParamsPtr& pa, const UniversePtr& ua, const ParamsPtr& pb,
                   const UniversePtr& ub) {
    if (!pa->same_as(*pb)) throw ParamsMismatchError("group params mismatch");
    if (ua->digest() != ub->digest())
        throw ParamsMismatchError("universe digest mismatch");
}

// attr -> allowed value set of the (unique) leaf, for a normalized policy.
std::vector<const std::set<std::size_t>*> leaf_allowed_sets(const Policy& policy) {
    std::vector<const std::set<std::size_t>*> out(policy.universe()->attr_count(),
                                                  nullptr);
    auto walk = [&](auto&& self, const PolicyNode& node) -> void {
        if (node.kind == PolicyNode::Kind::Leaf) {
            out[node.attr] = &node.allowed_values;
            return;
        }
        for (const auto& c : node.children) self(self, c);
    };
    walk(walk, policy.root());
    return out;
}

}  // namespace

Digest message_tag(const GTElement& message) {
    return sha256_labeled("ABE-TAG", serialize_element(message));
}

const GElement& PublicKey::t_at(std::size_t attr, std::size_t value) const {
    return t.at(slot_offset(*universe, attr) + value);
}

const Scalar& MasterKey::a_at(std::size_t attr, std::size_t value) const {
    return a.at(slot_offset(*universe, attr) + value);
}

std::size_t Ciphertext::slot_index(std::size_t attr, std::size_t value) const {
    return slot_offset(*universe, attr) + value;
}

std::pair<PublicKey, MasterKey> setup(UniversePtr universe, ParamsPtr params,
                                      Rng& rng) {
    GElement g = generator(params);
    Scalar alpha = random_scalar(params, rng);
    std::vector<Scalar> a;
    std::vector<GElement> t;
    for (std::size_t i = 0; i < universe->attr_count(); ++i) {
        for (std::size_t v = 0; v < universe->value_count(i); ++v) {
            Scalar a_it = random_scalar(params, rng);
            t.push_back(pow(g, a_it));
            a.push_back(std::move(a_it));
        }
    }
    GTElement y = pow(pairing_base(params), alpha);
    PublicKey pk{params, universe, std::move(y), std::move(t)};
    MasterKey mk{params, universe, std::move(alpha), std::move(a)};
    return {std::move(pk), std::move(mk)};
}

SecretKey keygen(const MasterKey& mk, const AttributeList& attributes, Rng& rng) {
    if (!(*attributes.universe() == *mk.universe))
        throw ParamsMismatchError("attribute list universe mismatch");
    GElement g = generator(mk.params);
    Scalar r = random_scalar(mk.params, rng);
    GElement d0 = pow(g, mk.alpha.sub(r));
    std::vector<GElement> d1, d2;
    for (std::size_t i = 0; i < mk.universe->attr_count(); ++i) {
        Scalar lambda = random_scalar(mk.params, rng);
        const Scalar& a_it = mk.a_at(i, attributes.value_of(i));
        d1.push_back(pow(g, r.add(lambda.mul(a_it))));
        d2.push_back(pow(g, lambda));
    }
    return {mk.params, mk.universe, attributes, std::move(d0), std::move(d1),
            std::move(d2)};
}

Ciphertext encrypt(const PublicKey& pk, const GTElement& message,
                   const Policy& policy, Rng& rng) {
    if (!(*policy.universe() == *pk.universe))
        throw ParamsMismatchError("policy universe mismatch");
    if (!message.params()->same_as(*pk.params))
        throw ParamsMismatchError("message params mismatch");

    Policy w = policy.normalized() ? policy : normalize(policy);
    GElement g = generator(pk.params);

    Scalar s = random_scalar(pk.params, rng);
    GElement c0 = pow(g, s);
    GTElement c = mul(message, pow(pk.y, s));

    ShareMap shares = assign_shares(w, s, rng);
    auto allowed = leaf_allowed_sets(w);

    std::vector<GElement> comp1, comp2;
    for (std::size_t i = 0; i < pk.universe->attr_count(); ++i) {
        const Scalar& share = shares.share(i);
        for (std::size_t v = 0; v < pk.universe->value_count(i); ++v) {
            if (allowed[i]->count(v)) {
                comp1.push_back(pow(g, share));
                comp2.push_back(pow(pk.t_at(i, v), share));
            } else {
                // Decoy slot: random pair, same shape as a real component.
                comp1.push_back(pow(g, random_scalar(pk.params, rng)));
                comp2.push_back(pow(g, random_scalar(pk.params, rng)));
            }
        }
    }
    return {pk.params, pk.universe,       std::move(c), std::move(c0),
            std::move(comp1), std::move(comp2), message_tag(message)};
}

namespace {

// Per-attribute pairing quotients, computed once; every candidate subset is
// then a few G_T multiplications.
struct DecryptContext {
    GTElement base;                   // C / e(C_0, D_0)
    std::vector<GTElement> factors;   // e(C2, D2) / e(C1, D1) per attribute

    DecryptContext(const SecretKey& sk, const Ciphertext& ct)
        : base(mul(ct.c, inverse(pair(ct.c0, sk.d0)))) {
        for (std::size_t i = 0; i < sk.universe->attr_count(); ++i) {
            std::size_t slot = ct.slot_index(i, sk.attributes.value_of(i));
            GTElement num = pair(ct.comp2[slot], sk.d2[i]);
            GTElement den = pair(ct.comp1[slot], sk.d1[i]);
            factors.push_back(mul(num, inverse(den)));
        }
    }

    GTElement candidate(std::uint64_t subset) const {
        GTElement m = base;
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (subset & (std::uint64_t{1} << i)) m = mul(m, factors[i]);
        return m;
    }
};

}  // namespace

std::optional<GTElement> decrypt(const SecretKey& sk, const Ciphertext& ct,
                                 unsigned max_attrs_for_search,
                                 DecryptStats* stats) {
    require_bound(sk.params, sk.universe, ct.params, ct.universe);
    const std::size_t n = sk.universe->attr_count();
    if (n > max_attrs_for_search)
        throw Error("attribute count exceeds blind-search bound");

    DecryptContext ctx(sk, ct);
    std::size_t tried = 0;
    // Full set first (the plain product over all attributes), then smaller
    // subsets by decreasing size, ascending mask within a size.
    for (std::size_t k = n; k >= 1; --k) {
        std::uint64_t mask = (std::uint64_t{1} << k) - 1;
        const std::uint64_t limit = std::uint64_t{1} << n;
        while (mask < limit) {
            GTElement m = ctx.candidate(mask);
            ++tried;
            if (message_tag(m) == ct.tag) {
                if (stats) stats->candidates_tried = tried;
                return m;
            }
            // Gosper's hack: next mask with the same popcount.
            std::uint64_t c = mask & -mask;
            std::uint64_t r = mask + c;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    if (stats) stats->candidates_tried = tried;
    return std::nullopt;
}

std::optional<GTElement> decrypt_with_policy(const SecretKey& sk,
                                             const Ciphertext& ct,
                                             const Policy& policy) {
    require_bound(sk.params, sk.universe, ct.params, ct.universe);
    Policy w = policy.normalized() ? policy : normalize(policy);
    auto sets = pruned_sets(w, sk.attributes);
    DecryptContext ctx(sk, ct);
    for (PrunedSet set : sets) {
        GTElement m = ctx.candidate(set);
        if (message_tag(m) == ct.tag) return m;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Serialization

Bytes PublicKey::serialize() const {
    Bytes out;
    append_header(out, "ABPK", *params, *universe);
    append_u32(out, static_cast<std::uint32_t>(t.size()));
    append_element(out, y);
    for (const auto& e : t) append_element(out, e);
    return out;
}

PublicKey PublicKey::deserialize(std::span<const std::uint8_t> data) {
    ByteReader in(data);
    Header h = read_header(in, "ABPK");
    std::uint32_t count = in.u32();
    if (count != h.universe->slot_count())
        throw FormatError("public key component count mismatch");
    GTElement y = read_gt(h.params, in);
    std::vector<GElement> t;
    for (std::uint32_t i = 0; i < count; ++i) t.push_back(read_g(h.params, in));
    if (!in.done()) throw FormatError("trailing bytes in public key");
    return {h.params, h.universe, std::move(y), std::move(t)};
}

Bytes MasterKey::serialize() const {
    Bytes out;
    append_header(out, "ABMK", *params, *universe);
    append_u32(out, static_cast<std::uint32_t>(a.size()));
    append_scalar(out, alpha);
    for (const auto& s : a) append_scalar(out, s);
    return out;
}

MasterKey MasterKey::deserialize(std::span<const std::uint8_t> data) {
    ByteReader in(data);
    Header h = read_header(in, "ABMK");
    std::uint32_t count = in.u32();
    if (count != h.universe->slot_count())
        throw FormatError("master key component count mismatch");
    Scalar alpha = read_scalar(h.params, in);
    std::vector<Scalar> a;
    for (std::uint32_t i = 0; i < count; ++i) a.push_back(read_scalar(h.params, in));
    if (!in.done()) throw FormatError("trailing bytes in master key");
    return {h.params, h.universe, std::move(alpha), std::move(a)};
}

Bytes SecretKey::serialize() const {
    Bytes out;
    append_header(out, "ABSK", *params, *universe);
    append_u32(out, static_cast<std::uint32_t>(d1.size()));
    for (std::size_t i = 0; i < universe->attr_count(); ++i)
        append_u16(out, static_cast<std::uint16_t>(attributes.value_of(i)));
    append_element(out, d0);
    for (std::size_t i = 0; i < d1.size(); ++i) {
        append_element(out, d1[i]);
        append_element(out, d2[i]);
    }
    return out;
}

SecretKey SecretKey::deserialize(std::span<const std::uint8_t> data) {
    ByteReader in(data);
    Header h = read_header(in, "ABSK");
    std::uint32_t n = in.u32();
    if (n != h.universe->attr_count())
        throw FormatError("secret key attribute count mismatch");
    std::vector<std::size_t> values;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::uint16_t v = in.u16();
        if (v >= h.universe->value_count(i))
            throw FormatError("secret key value index out of range");
        values.push_back(v);
    }
    AttributeList list(h.universe, std::move(values));
    GElement d0 = read_g(h.params, in);
    std::vector<GElement> d1, d2;
    for (std::uint32_t i = 0; i < n; ++i) {
        d1.push_back(read_g(h.params, in));
        d2.push_back(read_g(h.params, in));
    }
    if (!in.done()) throw FormatError("trailing bytes in secret key");
    return {h.params, h.universe, std::move(list), std::move(d0), std::move(d1),
            std::move(d2)};
}

Bytes Ciphertext::serialize() const {
    Bytes out;
    append_header(out, "ABCT", *params, *universe);
    append_bytes(out, tag);
    append_u32(out, static_cast<std::uint32_t>(comp1.size()));
    append_element(out, c);
    append_element(out, c0);
    for (std::size_t i = 0; i < comp1.size(); ++i) {
        append_element(out, comp1[i]);
        append_element(out, comp2[i]);
    }
    return out;
}

Ciphertext Ciphertext::deserialize(std::span<const std::uint8_t> data) {
    ByteReader in(data);
    Header h = read_header(in, "ABCT");
    Digest tag;
    auto tb = in.take(tag.size());
    std::copy(tb.begin(), tb.end(), tag.begin());
    std::uint32_t count = in.u32();
    if (count != h.universe->slot_count())
        throw FormatError("ciphertext component count mismatch");
    GTElement c = read_gt(h.params, in);
    GElement c0 = read_g(h.params, in);
    std::vector<GElement> comp1, comp2;
    for (std::uint32_t i = 0; i < count; ++i) {
        comp1.push_back(read_g(h.params, in));
        comp2.push_back(read_g(h.params, in));
    }
    if (!in.done()) throw FormatError("trailing bytes in ciphertext");
    return {h.params, h.universe, std::move(c), std::move(c0), std::move(comp1),
            std::move(comp2), tag};
}

}  // namespace abe
