#pragma once

#include "rigidtori/matrix.hpp"
#include "rigidtori/rational.hpp"

namespace rigidtori {

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

/// Z-basis (columns) of {x in Z^n : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Z-basis (columns) of (Q-span of the columns of `generators`) ∩ Z^n.
IntMatrix saturate(const IntMatrix& generators);

/// Scales a nonzero rational vector to the primitive integral vector with the
/// same direction (positive multiple).
std::vector<Integer> primitive_vector(const std::vector<Rational>& v);

/// Positive rational multiple of m with integral entries of gcd 1. A zero
/// matrix is returned unchanged.
RatMatrix primitive_matrix(const RatMatrix& m);

IntMatrix to_integer(const RatMatrix& m);
RatMatrix to_rational(const IntMatrix& m);

}  // namespace rigidtori
