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

#pragma once

#include <array>
#include <string>

#include <provchain/canonical.hpp>
#include <provchain/types.hpp>

namespace provchain {

//! SHA-256 of raw bytes.
[[nodiscard]] Hash sha256(ByteView data);
[[nodiscard]] Hash sha256(std::string_view data);

//! SHA-256 over the canonical serialization of a value.
[[nodiscard]] Hash hash_of(const canon::Value& value);

//! Ethereum-style account id: trailing 20 bytes of sha256(public key).
[[nodiscard]] Address address_of(const PublicKey& key);

//! Ed25519 key pair.
struct KeyPair {
    PublicKey public_key;
    SecretKey secret_key;

    [[nodiscard]] Address address() const { return address_of(public_key); }

    //! Fresh key from the OS random source.
    static KeyPair generate();
    //! Deterministic key from a 32-byte seed.
    static KeyPair from_seed(const std::array<std::uint8_t, 32>& seed);
};

[[nodiscard]] Signature sign(const SecretKey& key, ByteView message);
[[nodiscard]] bool verify(const PublicKey& key, ByteView message, const Signature& signature);

}  // namespace provchain
