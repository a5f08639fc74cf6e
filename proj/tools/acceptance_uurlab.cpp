// Copyright 2026 The uurlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the full acceptance suite and prints one pass/fail line per check.
// Exit status is 0 when every check passes and 1 otherwise.

#include <cstdio>
#include <cstdlib>
#include <exception>

#include "uurlab/verification.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 0;
    if (argc > 1) {
        seed = std::strtoull(argv[1], nullptr, 10);
    }
    try {
        std::vector<uurlab::CheckResult> checks = uurlab::run_acceptance_suite(seed);
        int passed = 0;
        for (size_t i = 0; i < checks.size(); ++i) {
            const uurlab::CheckResult& check = checks[i];
            std::printf("[%2zu] %-28s %s  %s\n", i + 1, check.name.c_str(),
                        check.pass ? "PASS" : "FAIL", check.details.c_str());
            passed += check.pass ? 1 : 0;
        }
        std::printf("%d/%zu acceptance checks passed (seed %llu)\n", passed, checks.size(),
                    static_cast<unsigned long long>(seed));
        return passed == static_cast<int>(checks.size()) ? 0 : 1;
    } catch (const std::exception& error) {
        std::fprintf(stderr, "acceptance suite aborted: %s\n", error.what());
        return 1;
    }
}
