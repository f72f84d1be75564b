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

// Runs the provchain executable as a child process inside a scratch directory.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace provchain::test {

struct CliRun {
    int code{-1};
    std::string out;
    std::string err;
};

inline std::string shell_quote(const std::string& s) {
    std::string q{"'"};
    for (char c : s) {
        if (c == '\'') {
            q += "'\\''";
        } else {
            q += c;
        }
    }
    return q + "'";
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in{p, std::ios::binary};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Workdir {
  public:
    explicit Workdir(const std::string& tag) {
        static int counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("provchain-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~Workdir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    Workdir(const Workdir&) = delete;
    Workdir& operator=(const Workdir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

    //! `args` is passed to /bin/sh as is; quote anything with spaces.
    CliRun run(const std::string& args) const {
        const auto err_file{path_ / ".stderr"};
        const std::string cmd{"cd " + shell_quote(path_.string()) + " && " + shell_quote(PROVCHAIN_CLI) + " " + args +
                              " 2>" + shell_quote(err_file.string())};
        CliRun r;
        FILE* pipe{::popen(cmd.c_str(), "r")};
        if (!pipe) return r;
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
        const int status{::pclose(pipe)};
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.err = read_text(err_file);
        return r;
    }

  private:
    std::filesystem::path path_;
};

//! First line of `text` that starts with `prefix`, without the prefix; empty if none.
inline std::string line_after(const std::string& text, const std::string& prefix) {
    std::istringstream in{text};
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    }
    return {};
}

}  // namespace provchain::test
