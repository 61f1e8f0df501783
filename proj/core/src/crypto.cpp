#include "holon/crypto.hpp"

#include "holon/errors.hpp"

namespace holon {

std::uint64_t fnv1a64(std::span<const std::uint8_t> data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint8_t b : data) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

namespace {

Bytes hash_bytes(std::span<const std::uint8_t> data) {
    std::uint64_t h = fnv1a64(data);
    std::uint64_t h2 = h * 1099511628211ULL + 0x9e3779b97f4a7c15ULL;
    Bytes out(16);
    for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(h >> (i * 8));
    for (int i = 0; i < 8; ++i) out[8 + i] = static_cast<std::uint8_t>(h2 >> (i * 8));
    return out;
}

Bytes derive_bytes(const std::string& seed) {
    std::span<const std::uint8_t> view(reinterpret_cast<const std::uint8_t*>(seed.data()),
                                       seed.size());
    return hash_bytes(view);
}

} // namespace

KeyPair ModelCrypto::generate_keypair(const std::string& owner) {
    ++counter_;
    KeyPair kp;
    // Public half is the hash of the private half, so verify() can recompute
    // the signature from the public key alone. Unforgeability is not modeled.
    kp.private_key = derive_bytes("kp:" + owner + "#" + std::to_string(counter_));
    kp.public_key = hash_bytes(kp.private_key);
    return kp;
}

Bytes ModelCrypto::sign(const Bytes& private_key, std::span<const std::uint8_t> data) {
    Bytes material = hash_bytes(private_key);
    material.insert(material.end(), data.begin(), data.end());
    return hash_bytes(material);
}

bool ModelCrypto::verify(const Bytes& public_key, std::span<const std::uint8_t> data,
                         const Bytes& signature) const {
    Bytes material = public_key;
    material.insert(material.end(), data.begin(), data.end());
    return hash_bytes(material) == signature;
}

SecretId ModelCrypto::generate_secret(const std::string& scope) {
    ++counter_;
    SecretId id = scope + "#" + std::to_string(counter_);
    known_.insert(id);
    ledger_[id];
    return id;
}

void ModelCrypto::grant(const std::string& holder, const SecretId& secret) {
    if (!known_.count(secret)) raise(Errc::InvariantViolation, "grant of unknown secret " + secret);
    if (destroyed_.count(secret)) raise(Errc::InvariantViolation, "grant of destroyed secret " + secret);
    ledger_[secret].insert(holder);
}

bool ModelCrypto::holds(const std::string& holder, const SecretId& secret) const {
    auto it = ledger_.find(secret);
    return it != ledger_.end() && it->second.count(holder) > 0;
}

void ModelCrypto::destroy_secret(const SecretId& secret) {
    destroyed_.insert(secret);
    ledger_.erase(secret);
}

SealedBlob ModelCrypto::seal(const SecretId& secret, Bytes plaintext) {
    return SealedBlob{secret, std::move(plaintext)};
}

std::optional<Bytes> ModelCrypto::unseal(const std::string& holder, const SealedBlob& blob) const {
    if (!holds(holder, blob.secret)) return std::nullopt;
    return blob.payload;
}

std::set<std::string> ModelCrypto::holders(const SecretId& secret) const {
    auto it = ledger_.find(secret);
    if (it == ledger_.end()) return {};
    return it->second;
}

} // namespace holon
