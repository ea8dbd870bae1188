#pragma once

#include "grover/additive_decomposition.hpp"
#include "grover/complex_linalg.hpp"
#include "grover/diagnostics.hpp"
#include "grover/errors.hpp"
#include "grover/exact_search_params.hpp"
#include "grover/grover_operators.hpp"
#include "grover/limits.hpp"
#include "grover/parallel_scheme.hpp"
#include "grover/shortcut_unitary.hpp"
#include "grover/verification.hpp"
