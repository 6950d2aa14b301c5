// Copyright 2026 The fermibits Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fermibits/bitops.hpp"
#include "fermibits/config.hpp"
#include "fermibits/fock.hpp"
#include "fermibits/matrix.hpp"
#include "fermibits/ops.hpp"
#include "fermibits/scalar.hpp"
#include "fermibits/spintrace.hpp"
