// Copyright 2026 The fesopt Authors
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

#include "fesopt/error.hpp"
#include "fesopt/fes_states.hpp"
#include "fesopt/fes_transform.hpp"
#include "fesopt/oracle.hpp"
#include "fesopt/povm_constraints.hpp"
#include "fesopt/state_io.hpp"
#include "fesopt/sweeps.hpp"
