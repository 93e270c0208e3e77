// Copyright 2026 The halfgauss Authors
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

#include "halfgauss/numtheory.hpp"
#include "halfgauss/cyclotomic.hpp"
#include "halfgauss/gauss.hpp"
#include "halfgauss/polynomial.hpp"
#include "halfgauss/expsum.hpp"
#include "halfgauss/oracle.hpp"
#include "halfgauss/clifford.hpp"
#include "halfgauss/holant.hpp"
#include "halfgauss/hardness.hpp"
#include "halfgauss/text.hpp"
