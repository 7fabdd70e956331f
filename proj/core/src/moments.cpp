#include "polyport/moments.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace polyport {

Tms::Tms(int nvars, int degree, Eigen::VectorXd values)
    : nvars_(nvars), degree_(degree), basis_(nvars, degree), values_(std::move(values)) {
  if (degree % 2 != 0) throw std::invalid_argument("Tms: degree must be even");
  if (values_.size() != basis_.size())
    throw std::invalid_argument("Tms: value length does not match basis size");
}

double riesz_pairing(const Polynomial& p, const Tms& y) {
  if (p.nvars() != y.nvars()) throw std::invalid_argument("riesz_pairing: variable count mismatch");
  if (p.degree() > y.degree()) throw std::invalid_argument("riesz_pairing: polynomial degree exceeds tms degree");
  double total = 0.0;
  for (const auto& [e, c] : p.terms()) total += c * y.at(e);
  return total;
}

Eigen::VectorXd monomial_column(const Eigen::VectorXd& point, const MonomialBasis& basis) {
  if (point.size() != basis.nvars())
    throw std::invalid_argument("monomial_column: point length mismatch");
  Eigen::VectorXd v(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    const Exponent& e = basis[i];
    double m = 1.0;
    for (int j = 0; j < basis.nvars(); ++j) {
      for (int k = 0; k < e[j]; ++k) m *= point(j);
    }
    v(i) = m;
  }
  return v;
}

Tms monomial_vector(const Eigen::VectorXd& point, int degree) {
  const int nvars = static_cast<int>(point.size());
  MonomialBasis basis(nvars, degree);
  return Tms(nvars, degree, monomial_column(point, basis));
}

LinearMatrixMap::LinearMatrixMap(int size, int nvars, int required_degree,
                                 std::vector<std::vector<Entry>> upper)
    : size_(size), nvars_(nvars), required_degree_(required_degree), upper_(std::move(upper)) {
  if (static_cast<int>(upper_.size()) != size_ * (size_ + 1) / 2)
    throw std::invalid_argument("LinearMatrixMap: wrong upper-triangle length");
}

const std::vector<LinearMatrixMap::Entry>& LinearMatrixMap::entries_at(int a, int b) const {
  if (a > b || a < 0 || b >= size_) throw std::out_of_range("LinearMatrixMap::entries_at");
  return upper_[static_cast<std::size_t>(upper_index(a, b))];
}

Eigen::MatrixXd LinearMatrixMap::apply(const Tms& y) const {
  if (y.nvars() != nvars_) throw std::invalid_argument("LinearMatrixMap::apply: variable count mismatch");
  if (y.degree() < required_degree_)
    throw std::invalid_argument("LinearMatrixMap::apply: tms degree too low");
  return apply_raw(y.values());
}

Eigen::MatrixXd LinearMatrixMap::apply_raw(const Eigen::VectorXd& y) const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(size_, size_);
  for (int a = 0; a < size_; ++a) {
    for (int b = a; b < size_; ++b) {
      double v = 0.0;
      for (const Entry& e : upper_[static_cast<std::size_t>(upper_index(a, b))]) {
        v += e.weight * y(e.position);
      }
      M(a, b) = v;
      M(b, a) = v;
    }
  }
  return M;
}

LinearMatrixMap localizing_map(const Polynomial& q, int k) {
  const int nvars = q.nvars();
  const int t0 = (q.degree() + 1) / 2;
  if (k < t0) throw std::invalid_argument("localizing_map: order k too small for deg q");

  const MonomialBasis rows(nvars, k - t0);
  const MonomialBasis target(nvars, 2 * k);
  const int s = rows.size();

  std::vector<std::vector<LinearMatrixMap::Entry>> upper(
      static_cast<std::size_t>(s * (s + 1) / 2));
  int required = 0;
  int slot = 0;
  for (int a = 0; a < s; ++a) {
    for (int b = a; b < s; ++b, ++slot) {
      const Exponent ab = rows[a].plus(rows[b]);
      auto& bucket = upper[static_cast<std::size_t>(slot)];
      for (const auto& [g, w] : q.terms()) {
        const Exponent e = ab.plus(g);
        bucket.push_back({target.index_of(e), w});
        required = std::max(required, e.total_degree());
      }
    }
  }
  return LinearMatrixMap(s, nvars, required, std::move(upper));
}

LinearMatrixMap moment_map(int nvars, int k) {
  return localizing_map(Polynomial::constant(nvars, 1.0), k);
}

ConeMembership membership_S(std::span<const Polynomial> g, int k, const Tms& y) {
  std::vector<Eigen::MatrixXd> mats;
  mats.push_back(moment_map(y.nvars(), k).apply(y));
  for (const Polynomial& gi : g) mats.push_back(localizing_map(gi, k).apply(y));

  bool member = true;
  double margin = std::numeric_limits<double>::infinity();
  for (const Eigen::MatrixXd& M : mats) {
    if (M.size() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    margin = std::min(margin, lo);
    if (lo < -1e-8 * (1.0 + hi)) member = false;
  }
  return {member, margin};
}

}  // namespace polyport
