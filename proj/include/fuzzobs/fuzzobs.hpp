#pragma once

// Covariant fuzzy observables on finite cyclic groups and truncated torus
// models: smearing constructions, coarse-graining, and the structural
// property checkers (covariance, norm-1, regularity, informational
// equivalence, Toeplitz/Herglotz).

#include "fuzzobs/coarse_graining.hpp"
#include "fuzzobs/complex_matrix.hpp"
#include "fuzzobs/cyclic_measure.hpp"
#include "fuzzobs/errors.hpp"
#include "fuzzobs/hermitian_eig.hpp"
#include "fuzzobs/observable.hpp"
#include "fuzzobs/stern_gerlach.hpp"
#include "fuzzobs/torus.hpp"
