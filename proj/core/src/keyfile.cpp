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

#include <provchain/keyfile.hpp>

#include <fstream>
#include <sstream>

namespace provchain {

canon::Value to_value(const KeyFile& k) {
    return canon::Object{
        {"address", k.key.address()},
        {"public_key", k.key.public_key},
        {"role", role_name(k.role)},
        {"secret_key", k.key.secret_key},
    };
}

KeyFile key_file_from_value(const canon::Value& v) {
    canon::expect_keys(v, {"address", "public_key", "role", "secret_key"}, "key file");
    KeyFile k;
    auto role{parse_role(v.at("role").as_string())};
    if (!role) throw ParseError{"unknown role '" + v.at("role").as_string() + "'"};
    k.role = *role;
    k.key.public_key = v.at("public_key").as_fixed<PublicKey>();
    k.key.secret_key = v.at("secret_key").as_fixed<SecretKey>();
    if (v.at("address").as_fixed<Address>() != k.key.address()) {
        throw ParseError{"address does not match the public key"};
    }
    return k;
}

KeyFile load_key_file(const std::filesystem::path& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw std::runtime_error{"cannot open key file " + path.string()};
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return key_file_from_value(canon::parse(text.str()));
    } catch (const ParseError& ex) {
        throw std::runtime_error{path.string() + ": " + ex.what()};
    }
}

void save_key_file(const KeyFile& key_file, const std::filesystem::path& path) {
    if (std::filesystem::exists(path)) throw std::runtime_error{path.string() + " already exists"};
    {
        std::ofstream out{path, std::ios::binary};
        if (!out) throw std::runtime_error{"cannot write key file " + path.string()};
        out << canon::serialize(to_value(key_file)) << '\n';
        if (!out.flush()) throw std::runtime_error{"write failed for " + path.string()};
    }
    std::error_code ec;
    std::filesystem::permissions(path, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write,
                                 std::filesystem::perm_options::replace, ec);
}

}  // namespace provchain
