/*
   Copyright 2026 The detrep authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "detrep/certify.hpp"
#include "detrep/gaussian.hpp"
#include "detrep/json_io.hpp"
#include "detrep/parser.hpp"
#include "detrep/poly.hpp"
#include "detrep/rational.hpp"
#include "detrep/realize.hpp"
#include "detrep/represent.hpp"
#include "detrep/sturm.hpp"
#include "detrep/transform.hpp"
