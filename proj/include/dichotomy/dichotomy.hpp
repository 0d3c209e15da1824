// Copyright 2026 The Dichotomy Authors
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

#ifndef DICHOTOMY_DICHOTOMY_HPP
#define DICHOTOMY_DICHOTOMY_HPP

#include "dichotomy/apps.hpp"
#include "dichotomy/coalition.hpp"
#include "dichotomy/dvalue.hpp"
#include "dichotomy/errors.hpp"
#include "dichotomy/io/csv.hpp"
#include "dichotomy/numerics.hpp"
#include "dichotomy/parallel.hpp"
#include "dichotomy/posterior.hpp"
#include "dichotomy/production.hpp"
#include "dichotomy/random.hpp"
#include "dichotomy/subset.hpp"
#include "dichotomy/taxpolicy.hpp"

#endif  // DICHOTOMY_DICHOTOMY_HPP
