// Copyright 2026 The bosim Authors
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

#ifndef BOSIM_PUBLISHED_H
#define BOSIM_PUBLISHED_H

#include "bosim/core.h"

namespace bosim {

/// Measured 6-mode transfer matrix recorded after the two-photon runs,
/// as printed to three decimals. Lossy; validates as non_unitary.
TransferMatrix measured_two_photon_unitary();

/// Measured 6-mode transfer matrix recorded after the three-photon runs.
TransferMatrix measured_three_photon_unitary();

}  // namespace bosim

#endif
