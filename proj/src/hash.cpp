#include "abe/hash.hpp"

#include <openssl/evp.h>

namespace abe {

Digest sha256(std::span<const std::uint8_t> data) {
    Digest out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(),
                   nullptr) != 1 ||
        len != out.size())
        throw Error("sha256 failed");
    return out;
}

Digest sha256_labeled(std::string_view label, std::span<const std::uint8_t> data) {
    Bytes buf;
    append_str(buf, label);
    append_bytes(buf, data);
    return sha256(buf);
}

}  // namespace abe
