// Copyright 2026 The tagforge Authors
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

#ifndef TAGFORGE_TAGFORGE_HPP_
#define TAGFORGE_TAGFORGE_HPP_

#include "tagforge/errors.hpp"
#include "tagforge/evaluation.hpp"
#include "tagforge/folksonomy.hpp"
#include "tagforge/forgery.hpp"
#include "tagforge/privacy.hpp"
#include "tagforge/profiles.hpp"
#include "tagforge/recommender.hpp"
#include "tagforge/rng.hpp"
#include "tagforge/simplexopt.hpp"
#include "tagforge/split.hpp"

#endif  // TAGFORGE_TAGFORGE_HPP_
