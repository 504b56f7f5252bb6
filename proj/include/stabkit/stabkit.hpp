// Copyright 2026 The stabkit Authors
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

#pragma once

#include "stabkit/approx8.hpp"
#include "stabkit/bench.hpp"
#include "stabkit/decompose.hpp"
#include "stabkit/errors.hpp"
#include "stabkit/gen.hpp"
#include "stabkit/geometry.hpp"
#include "stabkit/io.hpp"
#include "stabkit/laminar.hpp"
#include "stabkit/normalize.hpp"
#include "stabkit/oracle.hpp"
#include "stabkit/parallel.hpp"
#include "stabkit/scalar.hpp"
#include "stabkit/schemes.hpp"
