//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_SERVICE_HPP
#define ONCOGAT_SERVICE_HPP

#include "oncogat/service/config.hpp"
#include "oncogat/service/http.hpp"
#include "oncogat/service/jobs.hpp"
#include "oncogat/service/modes.hpp"
#include "oncogat/service/predictor.hpp"
#include "oncogat/service/request.hpp"

#endif // ONCOGAT_SERVICE_HPP
