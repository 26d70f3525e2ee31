//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_DATASET_HPP
#define ONCOGAT_DATASET_HPP

#include "oncogat/dataset/cluster.hpp"
#include "oncogat/dataset/records.hpp"
#include "oncogat/dataset/split.hpp"

#endif // ONCOGAT_DATASET_HPP
