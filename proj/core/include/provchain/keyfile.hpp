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

#include <filesystem>

#include <provchain/crypto.hpp>
#include <provchain/state.hpp>

namespace provchain {

//! Unencrypted key file: {"address","public_key","role","secret_key"}.
struct KeyFile {
    Role role{Role::kConsumer};
    KeyPair key;
};

[[nodiscard]] canon::Value to_value(const KeyFile& key_file);
[[nodiscard]] KeyFile key_file_from_value(const canon::Value& value);

//! Throws std::runtime_error on I/O failure or if the address does not match the key.
[[nodiscard]] KeyFile load_key_file(const std::filesystem::path& path);
//! Refuses to overwrite an existing file. Restricts permissions to the owner.
void save_key_file(const KeyFile& key_file, const std::filesystem::path& path);

}  // namespace provchain
