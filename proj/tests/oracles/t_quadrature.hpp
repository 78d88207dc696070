#pragma once

namespace covquiz::oracle {

/// Two-tailed Student-t probability by adaptive Simpson integration of the
/// density over [0, |t|]: p = 1 - 2 * integral. Uses only <cmath>.
double t_two_tailed_quadrature(double t, double df);

}  // namespace covquiz::oracle
