#include "abe/pairing.hpp"

#include <bit>

#include "abe/hash.hpp"

namespace abe {

namespace {

constexpr std::string_view kParamsMagic = "ABEG";
constexpr std::uint8_t kParamsVersion = 0x01;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    // p < 2^63, no overflow
    return (a + b) % p;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (a + p - b) % p;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t acc = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) acc = mulmod(acc, base, p);
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    return acc;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    // p prime, a != 0
    return powmod(a, p - 2, p);
}

void require_transparent(const GroupParams& params) {
    if (params.backend() != BackendId::Transparent)
        throw UnsupportedBackendError("external backend is not implemented");
}

void require_same(const GroupParams& a, const GroupParams& b) {
    if (!a.same_as(b)) throw ParamsMismatchError("group params mismatch");
}

std::uint64_t draw_below(Rng& rng, unsigned bits, std::uint64_t bound) {
    const std::uint64_t mask =
        bits >= 64 ? ~0ULL : ((std::uint64_t{1} << bits) - 1);
    for (;;) {
        std::uint64_t v = rng.next_u64() & mask;
        if (v < bound) return v;
    }
}

}  // namespace

bool is_probable_prime(std::uint64_t n, int rounds) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Deterministic bases cover all n < 2^64; extra rounds add random bases.
    SeededRng aux(n ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::uint64_t> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    while (static_cast<int>(bases.size()) < rounds)
        bases.push_back(2 + aux.next_u64() % (n - 3));
    for (std::uint64_t a : bases) {
        a %= n;
        if (a < 2) continue;
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < r - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

void GroupParams::serialize(Bytes& out) const {
    append_str(out, kParamsMagic);
    append_u8(out, kParamsVersion);
    append_u8(out, static_cast<std::uint8_t>(backend_));
    append_u16(out, static_cast<std::uint16_t>(bits_));
    for (int i = static_cast<int>(element_width()) - 1; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(p_ >> (8 * i)));
}

ParamsPtr GroupParams::deserialize(ByteReader& in) {
    in.expect_magic(kParamsMagic);
    if (in.u8() != kParamsVersion) throw FormatError("unsupported params version");
    auto backend_byte = in.u8();
    if (backend_byte > 1) throw FormatError("unknown backend id");
    auto backend = static_cast<BackendId>(backend_byte);
    unsigned bits = in.u16();
    if (bits == 0 || bits > 63) throw FormatError("unsupported bit length");
    auto pb = in.take((bits + 7) / 8);
    std::uint64_t p = 0;
    for (auto b : pb) p = (p << 8) | b;
    if (std::bit_width(p) != bits) throw FormatError("params bit length mismatch");
    if (!is_probable_prime(p)) throw FormatError("modulus is not prime");
    return ParamsPtr(new GroupParams(p, bits, backend));
}

ParamsPtr GroupParams::with_prime(std::uint64_t p, BackendId backend) {
    if (!is_probable_prime(p)) throw Error("modulus is not prime");
    return ParamsPtr(new GroupParams(p, std::bit_width(p), backend));
}

ParamsPtr group_setup(unsigned bits, BackendId backend,
                      std::optional<std::span<const std::uint8_t>> seed) {
    if (backend == BackendId::External)
        throw UnsupportedBackendError("external backend is not implemented");
    if (backend != BackendId::Transparent)
        throw UnsupportedBackendError("unknown backend");
    if (bits < 61 || bits > 63)
        throw Error("transparent backend supports 61..63 bit primes");
    std::unique_ptr<Rng> rng;
    if (seed)
        rng = std::make_unique<SeededRng>(*seed);
    else
        rng = std::make_unique<SystemRng>();
    const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    for (;;) {
        std::uint64_t candidate = (rng->next_u64() & mask) | lo | 1;
        if (is_probable_prime(candidate))
            return ParamsPtr(new GroupParams(candidate, bits, backend));
    }
}

Scalar::Scalar(ParamsPtr params, std::uint64_t value)
    : params_(std::move(params)), v_(value % params_->prime()) {}

Scalar Scalar::add(const Scalar& o) const {
    require_same(*params_, *o.params_);
    return {params_, addmod(v_, o.v_, params_->prime())};
}

Scalar Scalar::sub(const Scalar& o) const {
    require_same(*params_, *o.params_);
    return {params_, submod(v_, o.v_, params_->prime())};
}

Scalar Scalar::mul(const Scalar& o) const {
    require_same(*params_, *o.params_);
    return {params_, mulmod(v_, o.v_, params_->prime())};
}

Scalar Scalar::inverse() const {
    if (v_ == 0) throw Error("inverse of zero");
    return {params_, invmod(v_, params_->prime())};
}

bool Scalar::operator==(const Scalar& o) const {
    return params_->same_as(*o.params_) && v_ == o.v_;
}

Scalar random_scalar(const ParamsPtr& params, Rng& rng) {
    // Z_p* draw: nonzero
    for (;;) {
        std::uint64_t v = draw_below(rng, params->bits(), params->prime());
        if (v != 0) return {params, v};
    }
}

Scalar hash_to_scalar(const ParamsPtr& params, std::span<const std::uint8_t> data) {
    Digest d = sha256_labeled("ABE-H2S", data);
    unsigned __int128 acc = 0;
    for (int i = 0; i < 16; ++i) acc = (acc << 8) | d[i];
    return {params, static_cast<std::uint64_t>(acc % params->prime())};
}

GElement generator(const ParamsPtr& params) {
    require_transparent(*params);
    return {params, 1};
}

GElement identity_g(const ParamsPtr& params) {
    require_transparent(*params);
    return {params, 0};
}

GTElement pairing_base(const ParamsPtr& params) {
    require_transparent(*params);
    return {params, 1};
}

GTElement identity_gt(const ParamsPtr& params) {
    require_transparent(*params);
    return {params, 0};
}

namespace {

// Transparent group law on dlog representations (additive in the exponent).
template <typename E>
E mul_impl(const E& x, const E& y) {
    require_same(*x.params(), *y.params());
    require_transparent(*x.params());
    return {x.params(), addmod(x.rep(), y.rep(), x.params()->prime())};
}

template <typename E>
E inverse_impl(const E& x) {
    require_transparent(*x.params());
    return {x.params(), submod(0, x.rep(), x.params()->prime())};
}

template <typename E>
E pow_impl(const E& base, const Scalar& exp) {
    require_same(*base.params(), *exp.params());
    require_transparent(*base.params());
    return {base.params(), mulmod(base.rep(), exp.value(), base.params()->prime())};
}

}  // namespace

GElement mul(const GElement& x, const GElement& y) { return mul_impl(x, y); }
GTElement mul(const GTElement& x, const GTElement& y) { return mul_impl(x, y); }
GElement inverse(const GElement& x) { return inverse_impl(x); }
GTElement inverse(const GTElement& x) { return inverse_impl(x); }
GElement pow(const GElement& base, const Scalar& exp) { return pow_impl(base, exp); }
GTElement pow(const GTElement& base, const Scalar& exp) { return pow_impl(base, exp); }

GTElement pair(const GElement& x, const GElement& y) {
    require_same(*x.params(), *y.params());
    require_transparent(*x.params());
    return {x.params(), mulmod(x.rep(), y.rep(), x.params()->prime())};
}

GTElement random_gt(const ParamsPtr& params, Rng& rng) {
    require_transparent(*params);
    return {params, draw_below(rng, params->bits(), params->prime())};
}

namespace {

Bytes encode_rep(std::uint64_t rep, std::size_t width) {
    Bytes out;
    out.reserve(width);
    for (int i = static_cast<int>(width) - 1; i >= 0; --i)
        out.push_back(static_cast<std::uint8_t>(rep >> (8 * i)));
    return out;
}

std::uint64_t decode_rep(const GroupParams& params,
                         std::span<const std::uint8_t> data) {
    if (data.size() != params.element_width())
        throw FormatError("wrong element length");
    std::uint64_t v = 0;
    for (auto b : data) v = (v << 8) | b;
    if (v >= params.prime()) throw FormatError("element out of range");
    return v;
}

}  // namespace

Bytes serialize_element(const GElement& x) {
    return encode_rep(x.rep(), x.params()->element_width());
}

Bytes serialize_element(const GTElement& x) {
    return encode_rep(x.rep(), x.params()->element_width());
}

GElement deserialize_g(const ParamsPtr& params, std::span<const std::uint8_t> data) {
    return {params, decode_rep(*params, data)};
}

GTElement deserialize_gt(const ParamsPtr& params, std::span<const std::uint8_t> data) {
    return {params, decode_rep(*params, data)};
}

void append_scalar(Bytes& out, const Scalar& s) {
    auto enc = encode_rep(s.value(), s.params()->element_width());
    append_bytes(out, enc);
}

void append_element(Bytes& out, const GElement& x) {
    auto enc = serialize_element(x);
    append_bytes(out, enc);
}

void append_element(Bytes& out, const GTElement& x) {
    auto enc = serialize_element(x);
    append_bytes(out, enc);
}

Scalar read_scalar(const ParamsPtr& params, ByteReader& in) {
    auto b = in.take(params->element_width());
    return {params, decode_rep(*params, b)};
}

GElement read_g(const ParamsPtr& params, ByteReader& in) {
    return deserialize_g(params, in.take(params->element_width()));
}

GTElement read_gt(const ParamsPtr& params, ByteReader& in) {
    return deserialize_gt(params, in.take(params->element_width()));
}

}  // namespace abe
