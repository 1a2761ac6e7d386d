#pragma once

#include "hmvol/catalog.hpp"
#include "hmvol/density.hpp"
#include "hmvol/discriminant.hpp"
#include "hmvol/error.hpp"
#include "hmvol/expr.hpp"
#include "hmvol/factor.hpp"
#include "hmvol/fixtures.hpp"
#include "hmvol/integer.hpp"
#include "hmvol/lattice.hpp"
#include "hmvol/padic.hpp"
#include "hmvol/special_values.hpp"
#include "hmvol/symbolic.hpp"
#include "hmvol/volume.hpp"
