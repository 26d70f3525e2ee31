//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_AUTODIFF_HPP
#define ONCOGAT_AUTODIFF_HPP

#include "oncogat/autodiff/losses.hpp"
#include "oncogat/autodiff/ops.hpp"
#include "oncogat/autodiff/optim.hpp"
#include "oncogat/autodiff/tape.hpp"

#endif // ONCOGAT_AUTODIFF_HPP
