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

#ifndef mimosched_acceptance_H
#define mimosched_acceptance_H

#include <functional>
#include <string>
#include <vector>

namespace mimosched
{
    struct CriterionResult
    {
        int id = 0;
        std::string name;
        bool pass = false;
        std::string detail;
    };

    // One check per acceptance criterion, numbered 1..10. Thresholds are fixed in the implementation.
    struct Criterion
    {
        int id;
        std::string name;
        std::function<CriterionResult()> run;
    };

    const std::vector<Criterion> &acceptance_criteria();

    // Runs the selected criteria (all if `ids` is empty), printing one PASS/FAIL line per criterion via `log`.
    std::vector<CriterionResult> run_acceptance(const std::vector<int> &ids,
                                                const std::function<void(const CriterionResult &)> &log);

    std::string format_result(const CriterionResult &r);
}

#endif
