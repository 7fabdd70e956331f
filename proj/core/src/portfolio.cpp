#include "polyport/portfolio.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace polyport {

RiskPreference::RiskPreference(Eigen::VectorXd weights) : lambda(std::move(weights)) {
  if (lambda.size() < 1) throw std::invalid_argument("RiskPreference: need at least one weight");
  for (int i = 0; i < lambda.size(); ++i) {
    if (!(lambda(i) >= 0.0)) throw std::invalid_argument("RiskPreference: weights must be nonnegative");
  }
  if (std::abs(lambda.sum() - 1.0) > 1e-12)
    throw std::invalid_argument("RiskPreference: weights must sum to one");
}

ReturnSamples::ReturnSamples(Eigen::MatrixXd sample_matrix) : values(std::move(sample_matrix)) {
  if (values.rows() < 1) throw std::invalid_argument("ReturnSamples: need at least one sample");
  if (values.cols() < 2) throw std::invalid_argument("ReturnSamples: need at least two assets");
  if (!values.allFinite()) throw std::invalid_argument("ReturnSamples: entries must be finite");
}

NormalModel::NormalModel(Eigen::VectorXd mean_vector, Eigen::MatrixXd covariance_matrix)
    : mean(std::move(mean_vector)), covariance(std::move(covariance_matrix)) {
  if (covariance.rows() != covariance.cols() || covariance.rows() != mean.size())
    throw std::invalid_argument("NormalModel: covariance shape does not match mean");
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("NormalModel: covariance must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(covariance, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("NormalModel: covariance must be positive semidefinite");
}

Polynomial portfolio_return(const ReturnSamples& samples, int j) {
  if (j < 0 || j >= samples.count()) throw std::out_of_range("portfolio_return: sample index");
  const int n = samples.assets();
  const int v = n - 1;
  Polynomial r = Polynomial::constant(v, samples.values(j, n - 1));
  for (int i = 0; i < v; ++i) {
    r.add_term(Exponent::unit(v, i), samples.values(j, i) - samples.values(j, n - 1));
  }
  return r;
}

namespace {

std::vector<Polynomial> centered_returns(const ReturnSamples& samples) {
  const int N = samples.count();
  std::vector<Polynomial> rho;
  rho.reserve(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) rho.push_back(portfolio_return(samples, j));
  Polynomial mean(samples.assets() - 1);
  for (const Polynomial& r : rho) mean += r;
  mean *= 1.0 / N;
  for (Polynomial& r : rho) r -= mean;
  return rho;
}

}  // namespace

Polynomial sample_central_moment_poly(const ReturnSamples& samples, int i) {
  if (i < 2) throw std::invalid_argument("sample_central_moment_poly: order must be >= 2");
  const std::vector<Polynomial> centered = centered_returns(samples);
  Polynomial total(samples.assets() - 1);
  for (const Polynomial& d : centered) total += pow(d, i);
  total *= 1.0 / samples.count();
  return total;
}

Polynomial build_sample_loss(const ReturnSamples& samples, const RiskPreference& pref,
                             int degree_cap) {
  const int d = pref.order();
  if (d > degree_cap) throw std::invalid_argument("build_sample_loss: moment order exceeds cap");
  const int v = samples.assets() - 1;

  Polynomial mean(v);
  for (int j = 0; j < samples.count(); ++j) mean += portfolio_return(samples, j);
  mean *= 1.0 / samples.count();

  Polynomial loss = mean * (-pref.lambda(0));
  if (d >= 2) {
    const std::vector<Polynomial> centered = centered_returns(samples);
    for (int i = 2; i <= d; ++i) {
      if (pref.lambda(i - 1) == 0.0) continue;
      Polynomial moment(v);
      for (const Polynomial& c : centered) moment += pow(c, i);
      moment *= 1.0 / samples.count();
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      loss += moment * (sign * pref.lambda(i - 1));
    }
  }
  return loss;
}

Polynomial build_analytic_normal_loss(const NormalModel& model, const RiskPreference& pref) {
  const int d = pref.order();
  if (d > 4)
    throw std::invalid_argument(
        "build_analytic_normal_loss: closed forms supported through order 4");
  const int n = model.assets();

  Polynomial mean_term(n);
  for (int i = 0; i < n; ++i) mean_term.add_term(Exponent::unit(n, i), model.mean(i));

  Polynomial quad(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      quad.add_term(Exponent::unit(n, i).plus(Exponent::unit(n, j)), model.covariance(i, j));
    }
  }

  Polynomial f = mean_term * (-pref.lambda(0));
  if (d >= 2) f += quad * pref.lambda(1);
  // the third central moment of a normal return is zero
  if (d >= 4) f += (quad * quad) * (3.0 * pref.lambda(3));
  return eliminate_last_variable(f);
}

SampleSummary summarize(const ReturnSamples& samples) {
  const int N = samples.count();
  if (N < 2) throw std::invalid_argument("summarize: need at least two samples");
  SampleSummary s;
  s.sample_mean = samples.values.colwise().mean();
  Eigen::MatrixXd centered = samples.values.rowwise() - s.sample_mean.transpose();
  s.sample_covariance = centered.transpose() * centered / N;
  return s;
}

}  // namespace polyport
