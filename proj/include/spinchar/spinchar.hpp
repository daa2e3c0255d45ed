// Copyright 2026 The spinchar Authors
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

#include "spinchar/character_engine.hpp"
#include "spinchar/combinatorics.hpp"
#include "spinchar/errors.hpp"
#include "spinchar/exact.hpp"
#include "spinchar/kostka_engine.hpp"
#include "spinchar/mpo_builders.hpp"
#include "spinchar/oracle.hpp"
#include "spinchar/sampling.hpp"
#include "spinchar/tensor.hpp"
