//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CHEM_HPP
#define ONCOGAT_CHEM_HPP

#include "oncogat/chem/charges.hpp"
#include "oncogat/chem/element.hpp"
#include "oncogat/chem/molecule.hpp"
#include "oncogat/chem/perception.hpp"
#include "oncogat/chem/rings.hpp"
#include "oncogat/chem/sdf.hpp"
#include "oncogat/chem/smiles.hpp"
#include "oncogat/chem/writer.hpp"

#endif // ONCOGAT_CHEM_HPP
