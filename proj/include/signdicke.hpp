// Copyright 2026 The signdicke Authors
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

#include "signdicke/circuit.hpp"
#include "signdicke/combinatorics.hpp"
#include "signdicke/dicke_state.hpp"
#include "signdicke/dissimilarity.hpp"
#include "signdicke/entanglement.hpp"
#include "signdicke/errors.hpp"
#include "signdicke/experiments.hpp"
#include "signdicke/hamiltonian.hpp"
#include "signdicke/jacobi.hpp"
#include "signdicke/parallel.hpp"
#include "signdicke/pauli.hpp"
#include "signdicke/record.hpp"
#include "signdicke/rng.hpp"
#include "signdicke/statevector.hpp"
