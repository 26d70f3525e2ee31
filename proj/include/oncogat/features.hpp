//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_FEATURES_HPP
#define ONCOGAT_FEATURES_HPP

#include "oncogat/features/atom_features.hpp"
#include "oncogat/features/descriptors.hpp"
#include "oncogat/features/export.hpp"
#include "oncogat/features/fingerprint.hpp"
#include "oncogat/features/graph.hpp"
#include "oncogat/features/scaler.hpp"

#endif // ONCOGAT_FEATURES_HPP
