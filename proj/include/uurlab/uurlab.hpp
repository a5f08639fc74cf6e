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

/// \file
/// Convenience umbrella header pulling in the whole library: linear algebra
/// primitives, the uncertainty relations for unitaries and state overlaps,
/// out-of-time-order correlator bounds, the virtual interferometer, and the
/// experiment pipelines built on top of them.

#pragma once

#include "uurlab/experiment.hpp"
#include "uurlab/interferometer.hpp"
#include "uurlab/matrix.hpp"
#include "uurlab/otoc.hpp"
#include "uurlab/overlap.hpp"
#include "uurlab/random.hpp"
#include "uurlab/report.hpp"
#include "uurlab/states.hpp"
#include "uurlab/unitary.hpp"
#include "uurlab/uur.hpp"
#include "uurlab/verification.hpp"
