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

#ifndef mimosched_scheduling_H
#define mimosched_scheduling_H

#include "mimosched/channel.hpp"
#include "mimosched/config.hpp"
#include "mimosched/spectrum.hpp"

#include <cstddef>
#include <vector>

namespace mimosched
{
    struct ScheduleResult
    {
        std::vector<std::size_t> selected; // user indices in selection order
        double epsilon_used = 0.0;         // epsilon for CUSBF/JSDM, gamma for GWC
        Scheme scheme = Scheme::CUSBF;
    };

    // Euclidean norm of a spectrum row.
    double f1(const SpectrumRow &u);

    // Normalized spectral overlap |u_k u_j^T| / (||u_k|| ||u_j||) in [0, 1].
    // Throws std::domain_error if either row has zero norm.
    double f2(const SpectrumRow &u_k, const SpectrumRow &u_j);

    // Greedy correlation-based selection: pick the largest-norm candidate, keep only candidates whose
    // overlap with the pick is below epsilon, repeat until K_s users or no candidates are left.
    // Zero-power rows never enter the candidate set. Throws std::invalid_argument if U has no positive row.
    //
    // PruneMode::AllSelected shrinks the candidate set monotonically, so every selected pair satisfies
    // f2 < epsilon. PruneMode::LatestOnly re-admits all unselected users at each step and only tests them
    // against the latest pick.
    ScheduleResult cusbf_schedule(const SpectrumMatrix &U, unsigned K_s, double epsilon,
                                  PruneMode mode = PruneMode::AllSelected);

    // Bin-occupancy variant: the selection metric is the number of occupied bins, ties go to the larger f1
    // and then to the lower index. Pruning is the same as in cusbf_schedule.
    ScheduleResult jsdm_schedule(const SpectrumMatrix &U, unsigned K_s, double epsilon,
                                 PruneMode mode = PruneMode::AllSelected);

    // Semi-orthogonal user selection on estimated channels. At each step the candidate with the largest
    // component orthogonal to the already selected directions is chosen, then candidates whose normalized
    // correlation with that direction is gamma or more are dropped.
    ScheduleResult gwc_schedule(const ChannelMatrix &H_est, unsigned K_s, double gamma);
}

#endif
