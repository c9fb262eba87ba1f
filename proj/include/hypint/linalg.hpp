#pragma once

#include "hypint/rational.hpp"

#include <optional>

namespace hypint {

Rat dot(const VecQ& a, const VecQ& b);
Int dot(const VecZ& a, const VecZ& b);
VecQ to_rational_vec(const VecZ& v);
MatQ to_rational_mat(const MatZ& m);

// Reduced row echelon form in place. Returns the pivot columns in order;
// zero rows sink to the bottom.
std::vector<long> rref(MatQ& m);

long rank(MatQ m);

// One exact solution of m x = rhs with all free variables set to zero, or
// nullopt when the system is inconsistent.
std::optional<VecQ> solve_linear(const MatQ& m, const VecQ& rhs);

// Basis of {x : m x = 0} over Q, one row per basis vector.
MatQ nullspace(const MatQ& m);

// Clear denominators and divide by content, preserving orientation.
// The zero vector maps to itself.
VecZ primitive_vector(const VecQ& x);

// Determinant of a square matrix by exact elimination.
Rat det(MatQ m);

} // namespace hypint
