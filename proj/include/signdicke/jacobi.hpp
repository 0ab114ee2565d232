// Copyright 2026 The signdicke Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "signdicke/errors.hpp"

namespace signdicke {

struct JacobiOptions {
    /// Convergence when the off-diagonal Frobenius norm drops below
    /// tolerance * ||A||_F.
    double tolerance = 1e-12;
    int max_sweeps = 100;
};

/// Eigenvalues of a real symmetric matrix (row-major, dim x dim) by cyclic
/// Jacobi rotations, sorted descending. The input is consumed.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t dim, const JacobiOptions& opt = {}) {
    if (a.size() != dim * dim) {
        throw DomainError("jacobi_eigenvalues: matrix size does not match dimension");
    }
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * dim + j]; };

    double frob = 0.0;
    double off = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            double v = at(i, j) * at(i, j);
            frob += v;
            if (i != j) {
                off += v;
            }
        }
    }
    frob = std::sqrt(frob);
    const double target = opt.tolerance * frob;

    int sweep = 0;
    while (std::sqrt(off) > target) {
        if (sweep == opt.max_sweeps) {
            throw NumericalError("jacobi_eigenvalues: no convergence after " + std::to_string(opt.max_sweeps) +
                                 " sweeps (dim " + std::to_string(dim) + ")");
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < dim; ++p) {
            for (std::size_t q = p + 1; q < dim; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double app = at(p, p);
                const double aqq = at(q, q);
                // Skip rotations that cannot change the diagonal in double precision.
                if (sweep > 4 && std::abs(apq) < 1e-18 * (std::abs(app) + std::abs(aqq))) {
                    at(p, q) = 0.0;
                    at(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                double* row_p = &a[p * dim];
                double* row_q = &a[q * dim];
                for (std::size_t r = 0; r < dim; ++r) {
                    if (r == p || r == q) {
                        continue;
                    }
                    const double g = row_p[r];
                    const double h = row_q[r];
                    const double np = g - s * (h + g * tau);
                    const double nq = h + s * (g - h * tau);
                    row_p[r] = np;
                    row_q[r] = nq;
                    a[r * dim + p] = np;
                    a[r * dim + q] = nq;
                }
            }
        }
        off = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = i + 1; j < dim; ++j) {
                off += 2.0 * at(i, j) * at(i, j);
            }
        }
    }

    std::vector<double> eig(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        eig[i] = at(i, i);
    }
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

/// Pluggable symmetric eigenvalue backend: (row-major matrix, dim) -> eigenvalues.
using EigenvalueSolver = std::function<std::vector<double>(std::vector<double>, std::size_t)>;

}  // namespace signdicke
