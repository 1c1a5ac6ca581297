/*
   Copyright 2026 The vortexmf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#pragma once

#include "vortexmf/torus.hpp"

#include <string>
#include <vector>

namespace vortexmf {

/// One compared value in a validation report.
struct ValidationRow {
    std::string kind;
    double x1 = 0.0, x2 = 0.0;
    double value = 0.0;
    double reference = 0.0;
    double abs_error = 0.0;
};

/// One pass/fail line; `value` is compared against `tolerance`.
struct ValidationCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    std::vector<ValidationCheck> checks;
    bool all_pass() const;
};

/// Points with |x| log-spaced in [1e-3, 1e-2] at golden-angle directions.
std::vector<Vec2> near_origin_points(int count = 100);

/// Evaluator against the direct Ewald sum, the near-origin asymptotic, exact
/// antisymmetry, zero mean on a 512^2 grid and finite-difference consistency of G and K.
ValidationReport validate_kernel(int cutoff = 128, int resolution = 512);

/// Isotropy residuals, the scaling identity, the decay table at (0.3, 0.2) and the
/// uniform bound over `points` quasi-random positions.
ValidationReport validate_noise(int cutoff = 64, double nu = 0.05, int points = 1000);

/// Exact decay, grid refinement, step halving, divergence and mean conservation, and
/// the velocity of a narrow vortex blob against the torus kernel.
ValidationReport validate_ns();

/// kind,x1,x2,value,reference,abs_error rows then check,value,tolerance,pass rows.
void write_validation_csv(const std::string &path, const ValidationReport &report);

} // namespace vortexmf
