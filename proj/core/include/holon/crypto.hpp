#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace holon {

using Bytes = std::vector<std::uint8_t>;
using SecretId = std::string;

std::uint64_t fnv1a64(std::span<const std::uint8_t> data);
std::string hex64(std::uint64_t v);

struct KeyPair {
    Bytes public_key;
    Bytes private_key;
};

struct SealedBlob {
    SecretId secret;
    Bytes payload;
};

/// Pluggable crypto contract. The protocol layer only depends on this
/// surface: keypairs, signatures, group secrets and a sealing envelope.
/// Cryptographic strength is out of scope; what matters is who can open what.
class CryptoProvider {
public:
    virtual ~CryptoProvider() = default;

    virtual KeyPair generate_keypair(const std::string& owner) = 0;
    virtual Bytes sign(const Bytes& private_key, std::span<const std::uint8_t> data) = 0;
    virtual bool verify(const Bytes& public_key, std::span<const std::uint8_t> data,
                        const Bytes& signature) const = 0;

    /// Mint a fresh group secret; material exists but nobody holds it yet.
    virtual SecretId generate_secret(const std::string& scope) = 0;
    virtual void grant(const std::string& holder, const SecretId& secret) = 0;
    virtual bool holds(const std::string& holder, const SecretId& secret) const = 0;
    virtual void destroy_secret(const SecretId& secret) = 0;

    virtual SealedBlob seal(const SecretId& secret, Bytes plaintext) = 0;
    /// Opens iff the holder has been granted the sealing secret.
    virtual std::optional<Bytes> unseal(const std::string& holder, const SealedBlob& blob) const = 0;
};

/// Deterministic in-memory provider. Key material is derived from a counter
/// so runs replay bit-identically, and every grant is recorded in a ledger
/// that tests audit to check secret confinement.
class ModelCrypto : public CryptoProvider {
public:
    KeyPair generate_keypair(const std::string& owner) override;
    Bytes sign(const Bytes& private_key, std::span<const std::uint8_t> data) override;
    bool verify(const Bytes& public_key, std::span<const std::uint8_t> data,
                const Bytes& signature) const override;

    SecretId generate_secret(const std::string& scope) override;
    void grant(const std::string& holder, const SecretId& secret) override;
    bool holds(const std::string& holder, const SecretId& secret) const override;
    void destroy_secret(const SecretId& secret) override;

    SealedBlob seal(const SecretId& secret, Bytes plaintext) override;
    std::optional<Bytes> unseal(const std::string& holder, const SealedBlob& blob) const override;

    // Test-only ledger audit surface.
    std::set<std::string> holders(const SecretId& secret) const;
    bool destroyed(const SecretId& secret) const { return destroyed_.count(secret) > 0; }
    const std::map<SecretId, std::set<std::string>>& ledger() const { return ledger_; }

private:
    std::uint64_t counter_{0};
    std::map<SecretId, std::set<std::string>> ledger_;
    std::set<SecretId> known_;
    std::set<SecretId> destroyed_;
};

} // namespace holon
