#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace polyport {

/// Monomial exponent: one nonnegative power per variable.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::vector<int> degrees);

  static Exponent zero(int nvars);
  static Exponent unit(int nvars, int var);

  int nvars() const { return static_cast<int>(degrees_.size()); }
  int operator[](int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  int total_degree() const;
  const std::vector<int>& degrees() const { return degrees_; }

  Exponent plus(const Exponent& other) const;
  /// Drops the trailing variable.
  Exponent truncated() const;

  bool operator==(const Exponent& other) const { return degrees_ == other.degrees_; }
  bool operator!=(const Exponent& other) const { return degrees_ != other.degrees_; }

 private:
  std::vector<int> degrees_;
};

/// Graded lexicographic order: lower total degree first; within a grade the
/// exponent with the higher power on an earlier variable comes first. This
/// puts x1^t at the head of its grade and the unit exponents e_1..e_n at
/// positions 1..n, matching the usual monomial-vector listing
/// (1, x1, ..., xn, x1^2, ...).
bool grlex_less(const Exponent& a, const Exponent& b);

struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const { return grlex_less(a, b); }
};

/// All exponents of total degree <= degree in graded lexicographic order.
/// Bases over the same variables are prefix-compatible: an exponent keeps its
/// position when the degree bound grows.
class MonomialBasis {
 public:
  MonomialBasis(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exponents_.size()); }

  const Exponent& operator[](int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  const std::vector<Exponent>& exponents() const { return exponents_; }

  /// Position of an exponent; throws std::out_of_range if it exceeds the bound.
  int index_of(const Exponent& e) const;
  std::optional<int> find(const Exponent& e) const;

 private:
  int nvars_ = 0;
  int degree_ = 0;
  std::vector<Exponent> exponents_;
  std::map<Exponent, int, GrlexLess> index_;
};

/// Sparse multivariate polynomial with real coefficients. Immutable in
/// practice: every operation returns a new value. Coefficients whose
/// magnitude falls below kCoefficientDropTol after arithmetic are removed so
/// cancellation cannot inflate the degree.
class Polynomial {
 public:
  static constexpr double kCoefficientDropTol = 1e-14;

  using TermMap = std::map<Exponent, double, GrlexLess>;

  explicit Polynomial(int nvars);
  static Polynomial constant(int nvars, double value);
  static Polynomial variable(int nvars, int index);
  static Polynomial from_terms(int nvars,
                               const std::vector<std::pair<std::vector<int>, double>>& terms);

  int nvars() const { return nvars_; }
  /// Max total degree of a stored term; 0 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  int term_count() const { return static_cast<int>(terms_.size()); }

  double coefficient(const Exponent& e) const;
  /// Euclidean norm of the coefficient vector.
  double coefficient_norm() const;

  /// Accumulates c into the coefficient of e, dropping the term if it lands
  /// below the tolerance.
  void add_term(const Exponent& e, double c);

  double evaluate(const Eigen::VectorXd& point) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double scale);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial lhs, double scale) { return lhs *= scale; }
  friend Polynomial operator*(double scale, Polynomial rhs) { return rhs *= scale; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);

 private:
  int nvars_ = 0;
  TermMap terms_;
};

Polynomial pow(const Polynomial& p, int exponent);

/// Substitutes x_n = 1 - (x_1 + ... + x_{n-1}); the result lives in n-1
/// variables and satisfies q(xbar) = p(xbar, 1 - sum(xbar)).
Polynomial eliminate_last_variable(const Polynomial& p);

/// Dense coefficient vector in basis order; zero where a term is absent.
Eigen::VectorXd coefficient_vector(const Polynomial& p, const MonomialBasis& basis);

Polynomial polynomial_from_vector(const Eigen::VectorXd& coeffs, const MonomialBasis& basis);

}  // namespace polyport
