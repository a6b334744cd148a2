/*
   Copyright 2026 the reclab authors

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

#ifndef RECLAB_CHECK_HPP
#define RECLAB_CHECK_HPP

#include <string>
#include <vector>

#include "reclab/zmod.hpp"

namespace reclab {

struct CheckOptions {
    i64 p = 3;
    u64 seed = 12345;
    int samples = 50;
    int precision = 0; // 0 = per-suite default
    int window = 16;
    int dmax = 0;
};

struct CheckLine {
    std::string name;
    int cases = 0;
    int failures = 0;
};

struct CheckReport {
    std::string suite;
    std::vector<CheckLine> lines;
    bool ok() const {
        for (const auto& l : lines)
            if (l.failures) return false;
        return true;
    }
};

/// Invariant suites runnable from the CLI: local, laurent, fgl, derivations,
/// symbols, pairing, oracle.
CheckReport run_check_suite(const std::string& suite, const CheckOptions& opt);
std::vector<std::string> check_suite_names();

} // namespace reclab

#endif
