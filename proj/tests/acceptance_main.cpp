// SPDX-License-Identifier: Apache-2.0
//
// mimosched: correlation-based user scheduling and beamforming for massive MIMO
// Copyright (C) 2026 The mimosched authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include "mimosched/acceptance.hpp"

#include <cstdio>

int main()
{
    const auto results = mimosched::run_acceptance({}, [](const mimosched::CriterionResult &r)
                                                   { std::printf("%s\n", mimosched::format_result(r).c_str()); std::fflush(stdout); });
    int failed = 0;
    for (const auto &r : results)
        failed += r.pass ? 0 : 1;
    std::printf("%d/%zu criteria passed\n", int(results.size()) - failed, results.size());
    return failed == 0 ? 0 : 1;
}
