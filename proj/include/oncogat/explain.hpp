//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_EXPLAIN_HPP
#define ONCOGAT_EXPLAIN_HPP

#include "oncogat/explain/depict.hpp"
#include "oncogat/explain/faithfulness.hpp"
#include "oncogat/explain/integrated_gradients.hpp"
#include "oncogat/explain/occlusion.hpp"
#include "oncogat/explain/report.hpp"
#include "oncogat/explain/scorer.hpp"

#endif // ONCOGAT_EXPLAIN_HPP
