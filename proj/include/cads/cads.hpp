// Copyright 2026 The cads Authors
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

/// @file cads.hpp
/// Convenience umbrella for the whole library.

#pragma once

#include "cads/cli.hpp"
#include "cads/csv.hpp"
#include "cads/engine.hpp"
#include "cads/error.hpp"
#include "cads/model.hpp"
#include "cads/scenario.hpp"
#include "cads/sim.hpp"
#include "cads/strategies.hpp"
#include "cads/traces.hpp"
