// Copyright 2026 The ufsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "ufsim/cluster_set.hpp"
#include "ufsim/correction.hpp"
#include "ufsim/harness.hpp"
#include "ufsim/noise_model.hpp"
#include "ufsim/pe_state.hpp"
#include "ufsim/serial_uf.hpp"
#include "ufsim/staged_sim.hpp"
#include "ufsim/surface_graph.hpp"
#include "ufsim/sync_sim.hpp"
