#pragma once

#include <vector>

#include "ladder/int_matrix.hpp"

namespace ladder {

struct PerronData {
    double lambda = 0;
    std::vector<double> u;  // left, u.v = 1
    std::vector<double> v;  // right, sum v = d
    double residual = 0;    // max of the two infinity-norm residuals
    long iterations = 0;
};

struct PerronOptions {
    double tol = 1e-12;
    long max_iterations = 1000000;
};

// Shifted power iteration on M + I: double warm start, then 128-bit refinement.
// Throws Reducible or NonConvergence.
PerronData perron_eigenpair(const IntMatrix& m, const PerronOptions& opt = {});

}  // namespace ladder
