#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "cutproject/scalar.hpp"

namespace cutproject {

/// Dense row-major matrix of scalars.
using Matrix = std::vector<ScalarVec>;
using QVec = std::vector<mpq_class>;
using QMatrix = std::vector<QVec>;
using IntMatrix = std::vector<IntVec>;

Matrix identity_matrix(std::size_t n);
Matrix transpose(const Matrix& a);
ScalarVec multiply(const Matrix& a, const ScalarVec& x);
Matrix multiply(const Matrix& a, const Matrix& b);
/// Exact for exact entries; partial pivoting on magnitude otherwise.
Scalar determinant(Matrix a);
/// Inverse of a square matrix; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& a);
std::vector<std::vector<double>> to_doubles(const Matrix& a);

/// Sorted radicands occurring in the exact scalars of `values`, always
/// including 1. Coordinates with respect to {sqrt(s)} are rational.
std::vector<std::uint64_t> radicand_basis(const std::vector<Scalar>& values);
/// Rational coordinates of an exact scalar in the given radicand basis.
QVec expand(const Scalar& x, const std::vector<std::uint64_t>& basis);

std::size_t rank(QMatrix a);
/// Some solution of a y = b, or nullopt when inconsistent.
std::optional<QVec> solve(QMatrix a, QVec b);

/// Rank over Q of the columns of an exact matrix (entries expanded over the
/// radicand basis, so this is the Q-linear rank, not the field rank).
std::size_t rational_column_rank(const Matrix& a);

/// Unimodular integer matrix U with U v = e_1 for a primitive vector v.
IntMatrix unimodular_to_e1(const IntVec& v);
IntMatrix integer_inverse(const IntMatrix& u);
IntVec multiply(const IntMatrix& a, const IntVec& x);

}  // namespace cutproject
