#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "polyport/polynomial.hpp"

namespace polyport {

/// Truncated moment sequence: a vector indexed by MonomialBasis(nvars, degree)
/// with even degree, standing in for the moments of a measure.
class Tms {
 public:
  Tms() : Tms(0, 0, Eigen::VectorXd::Ones(1)) {}
  Tms(int nvars, int degree, Eigen::VectorXd values);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const Eigen::VectorXd& values() const { return values_; }
  const MonomialBasis& basis() const { return basis_; }

  double operator[](int i) const { return values_(i); }
  double at(const Exponent& e) const { return values_(basis_.index_of(e)); }
  /// Entry at the zero exponent.
  double y0() const { return values_(0); }

 private:
  int nvars_;
  int degree_;
  MonomialBasis basis_;
  Eigen::VectorXd values_;
};

/// Riesz pairing <p, y> = sum_a p_a y_a.
double riesz_pairing(const Polynomial& p, const Tms& y);

/// Values of every basis monomial at a point, in basis order.
Eigen::VectorXd monomial_column(const Eigen::VectorXd& point, const MonomialBasis& basis);

/// Moment vector of the Dirac measure at a point: y_a = point^a.
Tms monomial_vector(const Eigen::VectorXd& point, int degree);

/// Linear map from a tms to a symmetric matrix. Only the upper triangle
/// (a <= b) is stored; each entry is a sparse combination of tms positions.
/// Positions index MonomialBasis(nvars, 2k) and remain valid for any tms of
/// the same variables and degree >= required_degree() (graded bases are
/// prefix-compatible).
class LinearMatrixMap {
 public:
  struct Entry {
    int position;
    double weight;
  };

  LinearMatrixMap(int size, int nvars, int required_degree,
                  std::vector<std::vector<Entry>> upper);

  int size() const { return size_; }
  int nvars() const { return nvars_; }
  int required_degree() const { return required_degree_; }

  const std::vector<Entry>& entries_at(int a, int b) const;  // a <= b

  Eigen::MatrixXd apply(const Tms& y) const;
  /// Unchecked application to a raw moment vector (solver hot path).
  Eigen::MatrixXd apply_raw(const Eigen::VectorXd& y) const;

  template <typename F>
  void for_each_entry(F&& f) const {  // f(a, b, position, weight), a <= b
    for (int a = 0; a < size_; ++a) {
      for (int b = a; b < size_; ++b) {
        for (const Entry& e : entries_at(a, b)) f(a, b, e.position, e.weight);
      }
    }
  }

 private:
  int upper_index(int a, int b) const { return a * size_ - a * (a - 1) / 2 + (b - a); }

  int size_;
  int nvars_;
  int required_degree_;
  std::vector<std::vector<Entry>> upper_;
};

/// Structure of the kth localizing matrix of q: entry (a, b) pairs the tms
/// positions of a+b+g over the terms g of q, on rows indexed by
/// MonomialBasis(nvars, k - ceil(deg q / 2)).
LinearMatrixMap localizing_map(const Polynomial& q, int k);

/// Moment matrix structure, the q = 1 case of the localizing map.
LinearMatrixMap moment_map(int nvars, int k);

struct ConeMembership {
  bool member;
  double margin;  // least eigenvalue over all required matrices
};

/// Tests y against the moment cone of the tuple g at order k: the moment
/// matrix and every localizing matrix must be PSD up to a relative tolerance.
ConeMembership membership_S(std::span<const Polynomial> g, int k, const Tms& y);

}  // namespace polyport
