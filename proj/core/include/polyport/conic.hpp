#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "polyport/moments.hpp"
#include "polyport/polynomial.hpp"

namespace polyport {

enum class SolveStatus { Optimal, PrimalUnbounded, Infeasible, MaxIterations, NumericalFailure };

std::string to_string(SolveStatus status);

/// Interior-point stopping thresholds.
struct SolverSettings {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iter = 200;
  bool record_trace = false;
};

/// Standard-form conic program behind the moment relaxations:
///
///   minimize    c'y + epsilon * t
///   subject to  y_{equality_index} = 1,
///               B_j(y) is PSD for every stored block map B_j,
///               t >= ||y||   (the second-order cone; present iff epsilon > 0).
///
/// When epsilon == 0 the epigraph variable and its cone are dropped and the
/// problem is a plain SDP. Block 0 is the moment matrix by convention.
struct ConicProgram {
  int nvars = 0;   // variables of the underlying tms
  int degree = 0;  // tms degree, 2*d0
  Eigen::VectorXd c;
  double epsilon = 0.0;
  std::vector<LinearMatrixMap> psd_blocks;
  int equality_index = 0;

  int tms_length() const { return static_cast<int>(c.size()); }
};

struct IterationStats {
  double primal_objective;
  double dual_objective;
  double gap;
  double primal_residual;
  double dual_residual;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  Tms y;
  double t = 0.0;          // epigraph value; ||y|| when epsilon == 0
  double objective = 0.0;  // c'y + epsilon*t
  std::vector<Eigen::MatrixXd> psd_duals;  // Gram matrices, one per block
  double soc_dual_eta = 0.0;
  Eigen::VectorXd soc_dual_q;  // empty when epsilon == 0
  double equality_dual = 0.0;  // gamma, the certified lower bound
  double gap = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::vector<IterationStats> trace;
};

/// Solves the program with a homogeneous self-dual embedding, Nesterov-Todd
/// scaling and a Mehrotra predictor-corrector. Deterministic: identical
/// inputs produce identical iterates.
ConicSolution solve(const ConicProgram& prog, const SolverSettings& settings = {});

/// Weighted-sum-of-squares certificate recovered from the dual blocks:
/// f - q - gamma = sum_j <G_j, B_j-basis products>, with ||vec(q)|| <= eta.
struct SosCertificate {
  double gamma = 0.0;
  Polynomial q;
  std::vector<Eigen::MatrixXd> gram;
  double residual_norm = 0.0;  // coefficient norm of f - q - gamma - reconstruction
};

SosCertificate recover_sos_certificate(const ConicProgram& prog, const ConicSolution& sol);

}  // namespace polyport
