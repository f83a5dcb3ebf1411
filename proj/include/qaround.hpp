// Copyright 2026 The qaround Authors
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


/// @file qaround.hpp
/// Umbrella header.

#pragma once

#include "qaround/ancilla.hpp"
#include "qaround/builders.hpp"
#include "qaround/classify.hpp"
#include "qaround/emit.hpp"
#include "qaround/errors.hpp"
#include "qaround/gate_class.hpp"
#include "qaround/ir.hpp"
#include "qaround/library.hpp"
#include "qaround/linalg.hpp"
#include "qaround/numerics.hpp"
#include "qaround/parse.hpp"
#include "qaround/passes.hpp"
#include "qaround/stats.hpp"
