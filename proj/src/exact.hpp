#pragma once

// Exact sign evaluation over binary64 inputs. Internal to the library.

#include <gmpxx.h>

#include <span>
#include <vector>

namespace peelkit::exact {

/// Exact sign (-1, 0, +1) of sum_i a[i] * b[i]. Uses error-free transformations
/// into a floating-point expansion, with a rational fallback when a partial
/// product would underflow.
int sign_of_dot(std::span<const double> a, std::span<const double> b);

/// Exact sign of det[q - p, r - p] with a static floating-point filter in front.
int orient2d(double px, double py, double qx, double qy, double rx, double ry);

/// Exact test of |p - c|^2 <= radius^2 over the given binary64 values.
bool in_closed_ball(std::span<const double> p, std::span<const double> c, double radius);

inline mpq_class to_rational(double x) { return mpq_class(x); }

/// Rewrites every value as an integer times a shared power of two: returns the
/// integers; the shared scale is irrelevant for sign and ratio computations.
std::vector<mpz_class> to_common_integers(std::span<const double> values);

/// Sign of the determinant of a square integer matrix (row-major), computed
/// with fraction-free Bareiss elimination.
int determinant_sign(std::vector<mpz_class> matrix, std::size_t n);

/// Rank of an integer matrix (row-major, rows x cols).
std::size_t rank(std::vector<mpz_class> matrix, std::size_t rows, std::size_t cols);

} // namespace peelkit::exact
