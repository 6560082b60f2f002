#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace chtrace::numeric {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

/// Columns spanning { x : m x = 0 }, from the SVD; singular values at or
/// below tol * max(1, sigma_max) count as zero.
MatrixXcd kernel(const MatrixXcd& m, double tol);

/// Smallest singular value divided by max(1, largest).
double relative_min_singular_value(const MatrixXcd& m);

/// Orthonormal basis of the orthogonal complement of span(cols).
MatrixXcd orthogonal_complement(const MatrixXcd& cols, Eigen::Index ambient_dim);

/// Groups of indices whose values are chained by gaps <= tol (single linkage).
/// Groups are ordered by their smallest (real, imag) member.
std::vector<std::vector<Eigen::Index>> cluster_values(const VectorXcd& values, double tol);

/// Smallest gap between members of different clusters (inf for one cluster).
double min_intercluster_gap(const VectorXcd& values,
                            const std::vector<std::vector<Eigen::Index>>& clusters);

/// Uniform sample on the square [-1,1]^2 of the complex plane.
cplx uniform_square(std::mt19937_64& rng);

/// Scalar c with m ~= c I; returns false when the relative deviation
/// ||m - c I|| / max(1, ||m||) exceeds tol.
bool scalar_value(const MatrixXcd& m, double tol, cplx& out);

/// Dimension of { X : X g = g X for every g }.
int commutant_dimension(const std::vector<MatrixXcd>& gens, double tol);

/// Integer power by repeated squaring.
MatrixXcd matrix_power(const MatrixXcd& m, long e);

/// Integer square root when n is a perfect square, else -1.
long exact_sqrt(long n);

}  // namespace chtrace::numeric
