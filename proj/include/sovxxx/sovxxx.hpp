#pragma once

#include "types.hpp"
#include "poly.hpp"
#include "model_core.hpp"
#include "gauge.hpp"
#include "sov_basis.hpp"
#include "spectrum_tq.hpp"
#include "separate_states.hpp"
#include "scalar_products.hpp"
#include "random.hpp"
#include "verify.hpp"
