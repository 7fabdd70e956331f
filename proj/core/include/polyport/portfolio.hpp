#pragma once

#include <Eigen/Core>

#include "polyport/polynomial.hpp"

namespace polyport {

/// Risk preference weights lambda_1..lambda_d over the first d moments of the
/// portfolio return. Weights are nonnegative and sum to one.
struct RiskPreference {
  explicit RiskPreference(Eigen::VectorXd weights);

  int order() const { return static_cast<int>(lambda.size()); }

  Eigen::VectorXd lambda;
};

/// Observed return samples, one row per draw and one column per asset.
struct ReturnSamples {
  explicit ReturnSamples(Eigen::MatrixXd sample_matrix);

  int count() const { return static_cast<int>(values.rows()); }
  int assets() const { return static_cast<int>(values.cols()); }

  Eigen::MatrixXd values;
};

/// Multivariate normal return model: mean vector and a symmetric PSD
/// covariance (within tolerance).
struct NormalModel {
  NormalModel(Eigen::VectorXd mean_vector, Eigen::MatrixXd covariance_matrix);

  int assets() const { return static_cast<int>(mean.size()); }

  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

struct SampleSummary {
  Eigen::VectorXd sample_mean;
  Eigen::MatrixXd sample_covariance;  // N-denominator, matching the plug-in second moment
};

/// Portfolio return of sample j after eliminating the budget variable:
/// a linear polynomial in the first n-1 proportions.
Polynomial portfolio_return(const ReturnSamples& samples, int j);

/// Plug-in i-th central moment polynomial r_{i,N}(xbar): the sample mean of
/// (rho_j - rho_bar)^i over realized return polynomials rho_j.
Polynomial sample_central_moment_poly(const ReturnSamples& samples, int i);

/// Sample-average loss f_N(xbar) = -l1 r_{1,N} + sum_{i>=2} (-1)^i l_i r_{i,N},
/// a polynomial in n-1 variables of degree <= d.
Polynomial build_sample_loss(const ReturnSamples& samples, const RiskPreference& pref,
                             int degree_cap = 6);

/// Exact loss for a normal model (supported through d = 4): odd central
/// moments vanish, the second is x'Sx and the fourth is 3(x'Sx)^2. The budget
/// variable is already eliminated.
Polynomial build_analytic_normal_loss(const NormalModel& model, const RiskPreference& pref);

SampleSummary summarize(const ReturnSamples& samples);

}  // namespace polyport
