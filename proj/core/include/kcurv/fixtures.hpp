#pragma once

#include "kcurv/form.hpp"

namespace kcurv::fixtures {

/// x0² − x1² − … − x_{r−1}².
Form lorentzian(int r);
/// x0^n − x1^n − … − x_{r−1}^n.
Form diagonal(int n, int r);

/// X1³ + X0X1² − X0X2².
Form nodal_cubic();
/// X1³ − X1X0² + X0³ − X2²X0, the homogenization of y² = x³ − x + 1 with X0 = 1.
Form elliptic_cubic();
/// 6xyz.
Form three_lines();
/// X0²X1 + X0X1², three concurrent lines.
Form concurrent_lines();

/// det of an n×n hermitian matrix in n² real coordinates: the n diagonal
/// entries first, then Re and Im of each entry (i, j), i < j, in row order.
Form hermitian_determinant(int n);

}  // namespace kcurv::fixtures
