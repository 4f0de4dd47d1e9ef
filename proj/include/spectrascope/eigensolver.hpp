#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "spectrascope/dirichlet.hpp"

namespace spectrascope {

enum class EigenMethod { Auto, Dense, Sturm, Lanczos };

std::string to_string(EigenMethod m);
EigenMethod parse_eigen_method(const std::string& text);

struct SpectralEstimate {
  double lambda = 0.0;
  double residual = 0.0;     ///< ||M v - lambda v|| for the unit vector v returned
  EigenMethod method = EigenMethod::Auto;
  std::size_t n = 0;
  double bracket_lo = 0.0;   ///< certified enclosure (Sturm) or [lambda, lambda]
  double bracket_hi = 0.0;
  std::size_t iterations = 0;
  std::vector<double> trace; ///< successive estimates (Lanczos restarts, bisection midpoints)
  std::vector<double> vector;
};

/// The solver could not reach the tolerance within its budget.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best, double residual)
      : std::runtime_error(what), best_lambda(best), best_residual(residual) {}
  double best_lambda;
  double best_residual;
};

/// Smallest eigenvalue of M.
///
///   Dense    symmetric eigensolver, n <= 2000
///   Sturm    bisection on a path (tridiagonal) operator; the result is certified
///            by a bracket of width <= tol, the residual is reported alongside
///   Lanczos  shift-invert Lanczos with a sparse LDL^T factorisation, restarted
///            until the residual is <= tol or 10 n operator applications
///   Auto     picks from the operator structure
SpectralEstimate smallest_eigenvalue(const DirichletOperator& op, double tol = 1e-8,
                                     EigenMethod method = EigenMethod::Auto, bool keep_vector = false);

/// Largest eigenvalue of M (dense or plain Lanczos).
SpectralEstimate largest_eigenvalue(const DirichletOperator& op, double tol = 1e-8);

/// Number of eigenvalues of a path operator strictly below `lambda`.
std::size_t sturm_count(const DirichletOperator::PathForm& p, double lambda);

}  // namespace spectrascope
