#pragma once

// Reference implementations of the leave-out trace estimators: four nested
// loops over ordered distinct (i, j, k, l), every sign recomputed from the raw
// rows. O(n^4 p); intended for n <= 14.

#include "sphericity/sign_core.hpp"

namespace sphericity::oracle {

double brute_force_tr_omega_sq(const SampleMatrix& x);
double brute_force_tr_xi_sq(const SampleMatrix& x);

}  // namespace sphericity::oracle
