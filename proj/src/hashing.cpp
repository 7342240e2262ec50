#include "vsearch/hashing.hpp"

#include <sodium.h>

#include <stdexcept>
#include <vector>

namespace vsearch {

namespace {

void ensure_sodium() {
    static const bool ok = sodium_init() >= 0;
    if (!ok) throw std::runtime_error("libsodium initialisation failed");
}

} // namespace

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
    ensure_sodium();
    unsigned char digest[crypto_hash_sha256_BYTES];
    crypto_hash_sha256(digest, bytes.data(), bytes.size());
    char hex[crypto_hash_sha256_BYTES * 2 + 1];
    sodium_bin2hex(hex, sizeof hex, digest, sizeof digest);
    return hex;
}

std::string sha256_hex(std::string_view text) {
    return sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
    ensure_sodium();
    constexpr int variant = sodium_base64_VARIANT_ORIGINAL;
    std::vector<char> out(sodium_base64_ENCODED_LEN(bytes.size(), variant));
    sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(), variant);
    return std::string(out.data());
}

} // namespace vsearch
