#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "abe/bytes.hpp"
#include "abe/rng.hpp"

namespace abe {

// Symmetric prime-order bilinear group (G, G_T, g, e).
//
// The only implemented backend is "transparent": an element of G or G_T is
// stored as its discrete log to the base g (resp. e(g,g)), so pairing is
// exponent multiplication mod p. It is an exact correctness oracle and
// provides NO cryptographic hardness; every serialized header carries the
// backend id so artifacts from it are recognizably insecure. The External
// slot reserves space for a real curve backend behind the same interface.

enum class BackendId : std::uint8_t {
    Transparent = 0,
    External = 1,
};

struct UnsupportedBackendError : Error {
    using Error::Error;
};

class GroupParams;
using ParamsPtr = std::shared_ptr<const GroupParams>;

class GroupParams : public std::enable_shared_from_this<GroupParams> {
public:
    std::uint64_t prime() const { return p_; }
    unsigned bits() const { return bits_; }
    BackendId backend() const { return backend_; }
    // Serialized width of one element or scalar, ceil(bits/8).
    std::size_t element_width() const { return (bits_ + 7) / 8; }

    bool same_as(const GroupParams& other) const {
        return p_ == other.p_ && backend_ == other.backend_;
    }

    void serialize(Bytes& out) const;  // "ABEG" header block
    static ParamsPtr deserialize(ByteReader& in);

    // Test hook: wrap a given prime directly (e.g. p = 101 for hand vectors).
    static ParamsPtr with_prime(std::uint64_t p, BackendId backend);

private:
    GroupParams(std::uint64_t p, unsigned bits, BackendId backend)
        : p_(p), bits_(bits), backend_(backend) {}
    friend ParamsPtr group_setup(unsigned bits, BackendId backend,
                                 std::optional<std::span<const std::uint8_t>> seed);

    std::uint64_t p_;
    unsigned bits_;
    BackendId backend_;
};

// Generates group parameters with a random prime of the given bit length.
// Transparent backend supports 61..63 bits. A seed makes generation
// deterministic.
ParamsPtr group_setup(unsigned bits, BackendId backend,
                      std::optional<std::span<const std::uint8_t>> seed = {});

bool is_probable_prime(std::uint64_t n, int rounds = 40);

// Exponent in Z_p.
class Scalar {
public:
    Scalar(ParamsPtr params, std::uint64_t value);

    std::uint64_t value() const { return v_; }
    const ParamsPtr& params() const { return params_; }

    Scalar add(const Scalar& o) const;
    Scalar sub(const Scalar& o) const;
    Scalar mul(const Scalar& o) const;
    Scalar inverse() const;  // error on zero

    bool operator==(const Scalar& o) const;

private:
    ParamsPtr params_;
    std::uint64_t v_;
};

Scalar random_scalar(const ParamsPtr& params, Rng& rng);  // uniform in [1, p-1]
Scalar hash_to_scalar(const ParamsPtr& params, std::span<const std::uint8_t> data);

namespace detail {
// Shared element machinery; GElement and GTElement differ only by tag so the
// type system keeps G and G_T apart.
template <typename Tag>
class Element {
public:
    Element(ParamsPtr params, std::uint64_t rep) : params_(std::move(params)), rep_(rep) {}

    const ParamsPtr& params() const { return params_; }
    // Transparent backend: the discrete log. Opaque for other backends.
    std::uint64_t rep() const { return rep_; }

    bool operator==(const Element& o) const {
        return params_->same_as(*o.params_) && rep_ == o.rep_;
    }

private:
    ParamsPtr params_;
    std::uint64_t rep_;
};
struct GTag {};
struct GTTag {};
}  // namespace detail

using GElement = detail::Element<detail::GTag>;
using GTElement = detail::Element<detail::GTTag>;

GElement generator(const ParamsPtr& params);           // g
GElement identity_g(const ParamsPtr& params);
GTElement pairing_base(const ParamsPtr& params);       // e(g, g)
GTElement identity_gt(const ParamsPtr& params);

GElement mul(const GElement& x, const GElement& y);
GTElement mul(const GTElement& x, const GTElement& y);
GElement inverse(const GElement& x);
GTElement inverse(const GTElement& x);
GElement pow(const GElement& base, const Scalar& exp);
GTElement pow(const GTElement& base, const Scalar& exp);

GTElement pair(const GElement& x, const GElement& y);

GTElement random_gt(const ParamsPtr& params, Rng& rng);  // uniform over G_T

// Fixed-width big-endian element encodings; width = params->element_width().
Bytes serialize_element(const GElement& x);
Bytes serialize_element(const GTElement& x);
GElement deserialize_g(const ParamsPtr& params, std::span<const std::uint8_t> data);
GTElement deserialize_gt(const ParamsPtr& params, std::span<const std::uint8_t> data);

void append_scalar(Bytes& out, const Scalar& s);
void append_element(Bytes& out, const GElement& x);
void append_element(Bytes& out, const GTElement& x);
Scalar read_scalar(const ParamsPtr& params, ByteReader& in);
GElement read_g(const ParamsPtr& params, ByteReader& in);
GTElement read_gt(const ParamsPtr& params, ByteReader& in);

}  // namespace abe
