// Copyright 2026 The subpar Authors.
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


#ifndef SUBPAR_SUBPAR_H_
#define SUBPAR_SUBPAR_H_

#include "subpar/baselines.h"
#include "subpar/continuous_core.h"
#include "subpar/dr_box.h"
#include "subpar/error.h"
#include "subpar/fractional_point.h"
#include "subpar/harness.h"
#include "subpar/instance_io.h"
#include "subpar/instances.h"
#include "subpar/multilinear.h"
#include "subpar/oracle.h"
#include "subpar/parallel.h"
#include "subpar/random.h"
#include "subpar/subset.h"
#include "subpar/usm_continuous.h"
#include "subpar/usm_discrete.h"
#include "subpar/verify.h"

#endif  // SUBPAR_SUBPAR_H_
