//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_MODEL_HPP
#define ONCOGAT_MODEL_HPP

#include "oncogat/model/batch.hpp"
#include "oncogat/model/checkpoint.hpp"
#include "oncogat/model/metrics.hpp"
#include "oncogat/model/network.hpp"
#include "oncogat/model/train.hpp"

#endif // ONCOGAT_MODEL_HPP
