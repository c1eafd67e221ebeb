#pragma once

#include "gaqi/channels.hpp"
#include "gaqi/correlated.hpp"
#include "gaqi/demos.hpp"
#include "gaqi/errors.hpp"
#include "gaqi/format.hpp"
#include "gaqi/ga_core.hpp"
#include "gaqi/gates.hpp"
#include "gaqi/matrix_oracle.hpp"
#include "gaqi/multiqubit.hpp"
#include "gaqi/pauli_spin.hpp"
#include "gaqi/raw_tensor.hpp"
#include "gaqi/schmidt.hpp"
#include "gaqi/spacetime.hpp"
