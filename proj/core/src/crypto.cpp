/*
   Copyright 2026 The Provchain Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <provchain/crypto.hpp>

#include <memory>

#include <openssl/evp.h>
#include <sodium.h>

namespace provchain {

namespace {

    void ensure_sodium() {
        static const bool ready{[] {
            if (sodium_init() < 0) throw std::runtime_error{"libsodium initialisation failed"};
            return true;
        }()};
        (void)ready;
    }

    static_assert(crypto_hash_sha256_BYTES == Hash::kSize);
    static_assert(crypto_sign_PUBLICKEYBYTES == PublicKey::kSize);
    static_assert(crypto_sign_SECRETKEYBYTES == SecretKey::kSize);
    static_assert(crypto_sign_BYTES == Signature::kSize);
    static_assert(crypto_sign_SEEDBYTES == 32);

}  // namespace

// OpenSSL picks the SHA extensions when the CPU has them; libsodium's SHA-256 is portable C.
Hash sha256(ByteView data) {
    static EVP_MD* const md{EVP_MD_fetch(nullptr, "SHA256", nullptr)};
    thread_local const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};
    if (!md || !ctx) throw std::runtime_error{"SHA-256 unavailable"};
    Hash out;
    unsigned int len{0};
    if (EVP_DigestInit_ex2(ctx.get(), md, nullptr) != 1 || EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), out.bytes.data(), &len) != 1 || len != Hash::kSize) {
        throw std::runtime_error{"SHA-256 failed"};
    }
    return out;
}

Hash sha256(std::string_view data) {
    return sha256(ByteView{reinterpret_cast<const std::uint8_t*>(data.data()), data.size()});
}

Hash hash_of(const canon::Value& value) {
    return sha256(canon::serialize(value));
}

Address address_of(const PublicKey& key) {
    const Hash h{sha256(key.view())};
    Address out;
    std::copy(h.bytes.end() - Address::kSize, h.bytes.end(), out.bytes.begin());
    return out;
}

KeyPair KeyPair::generate() {
    ensure_sodium();
    KeyPair kp;
    crypto_sign_keypair(kp.public_key.bytes.data(), kp.secret_key.bytes.data());
    return kp;
}

KeyPair KeyPair::from_seed(const std::array<std::uint8_t, 32>& seed) {
    ensure_sodium();
    KeyPair kp;
    crypto_sign_seed_keypair(kp.public_key.bytes.data(), kp.secret_key.bytes.data(), seed.data());
    return kp;
}

Signature sign(const SecretKey& key, ByteView message) {
    ensure_sodium();
    Signature sig;
    crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(), key.bytes.data());
    return sig;
}

bool verify(const PublicKey& key, ByteView message, const Signature& signature) {
    ensure_sodium();
    return crypto_sign_verify_detached(signature.bytes.data(), message.data(), message.size(),
                                       key.bytes.data()) == 0;
}

}  // namespace provchain
