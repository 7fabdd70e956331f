#include "polyport/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace polyport {

namespace {

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Exponent::Exponent(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  for (int d : degrees_) {
    if (d < 0) throw std::invalid_argument("Exponent: negative power");
  }
}

Exponent Exponent::zero(int nvars) {
  return Exponent(std::vector<int>(static_cast<std::size_t>(nvars), 0));
}

Exponent Exponent::unit(int nvars, int var) {
  if (var < 0 || var >= nvars) throw std::out_of_range("Exponent::unit: variable index");
  std::vector<int> d(static_cast<std::size_t>(nvars), 0);
  d[static_cast<std::size_t>(var)] = 1;
  return Exponent(std::move(d));
}

int Exponent::total_degree() const {
  return std::accumulate(degrees_.begin(), degrees_.end(), 0);
}

Exponent Exponent::plus(const Exponent& other) const {
  if (nvars() != other.nvars()) throw std::invalid_argument("Exponent::plus: variable count mismatch");
  std::vector<int> d(degrees_);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += other.degrees_[i];
  return Exponent(std::move(d));
}

Exponent Exponent::truncated() const {
  if (degrees_.empty()) throw std::logic_error("Exponent::truncated: no variables");
  return Exponent(std::vector<int>(degrees_.begin(), degrees_.end() - 1));
}

bool grlex_less(const Exponent& a, const Exponent& b) {
  const int da = a.total_degree();
  const int db = b.total_degree();
  if (da != db) return da < db;
  return a.degrees() > b.degrees();  // higher power on an earlier variable first
}

namespace {

void enumerate_exponents(int nvars, int degree, std::vector<int>& current, int pos,
                         int remaining, std::vector<Exponent>& out) {
  if (pos == nvars) {
    out.emplace_back(current);
    return;
  }
  for (int d = 0; d <= remaining; ++d) {
    current[static_cast<std::size_t>(pos)] = d;
    enumerate_exponents(nvars, degree, current, pos + 1, remaining - d, out);
  }
  current[static_cast<std::size_t>(pos)] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 0) throw std::invalid_argument("MonomialBasis: nvars must be nonnegative");
  if (degree < 0) throw std::invalid_argument("MonomialBasis: degree must be nonnegative");
  std::vector<int> current(static_cast<std::size_t>(nvars), 0);
  enumerate_exponents(nvars, degree, current, 0, degree, exponents_);
  std::sort(exponents_.begin(), exponents_.end(), GrlexLess{});
  for (int i = 0; i < size(); ++i) index_.emplace(exponents_[static_cast<std::size_t>(i)], i);
}

int MonomialBasis::index_of(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw std::out_of_range("MonomialBasis::index_of: exponent outside basis");
  return it->second;
}

std::optional<int> MonomialBasis::find(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw std::invalid_argument("Polynomial: nvars must be nonnegative");
}

Polynomial Polynomial::constant(int nvars, double value) {
  Polynomial p(nvars);
  p.add_term(Exponent::zero(nvars), value);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  Polynomial p(nvars);
  p.add_term(Exponent::unit(nvars, index), 1.0);
  return p;
}

Polynomial Polynomial::from_terms(int nvars,
                                  const std::vector<std::pair<std::vector<int>, double>>& terms) {
  Polynomial p(nvars);
  for (const auto& [degrees, c] : terms) {
    if (static_cast<int>(degrees.size()) != nvars)
      throw std::invalid_argument("Polynomial::from_terms: exponent length mismatch");
    p.add_term(Exponent(degrees), c);
  }
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return 0;
  return terms_.rbegin()->first.total_degree();  // grlex: the last key has max degree
}

double Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::coefficient_norm() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * c;
  return std::sqrt(s);
}

void Polynomial::add_term(const Exponent& e, double c) {
  if (e.nvars() != nvars_) throw std::invalid_argument("Polynomial::add_term: variable count mismatch");
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kCoefficientDropTol) terms_.erase(it);
}

double Polynomial::evaluate(const Eigen::VectorXd& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("Polynomial::evaluate: point length mismatch");
  double total = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int i = 0; i < nvars_; ++i) m *= ipow(point(i), e[i]);
    total += m;
  }
  return total;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (nvars_ != other.nvars_) throw std::invalid_argument("Polynomial::operator+=: variable count mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (nvars_ != other.nvars_) throw std::invalid_argument("Polynomial::operator-=: variable count mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double scale) {
  TermMap scaled;
  for (const auto& [e, c] : terms_) {
    const double v = c * scale;
    if (std::abs(v) >= kCoefficientDropTol) scaled.emplace(e, v);
  }
  terms_ = std::move(scaled);
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.nvars_ != rhs.nvars_) throw std::invalid_argument("Polynomial::operator*: variable count mismatch");
  Polynomial::TermMap raw;
  for (const auto& [ea, ca] : lhs.terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      const Exponent e = ea.plus(eb);
      auto [it, inserted] = raw.emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  Polynomial result(lhs.nvars_);
  for (const auto& [e, c] : raw) {
    if (std::abs(c) >= Polynomial::kCoefficientDropTol) result.terms_.emplace(e, c);
  }
  return result;
}

Polynomial pow(const Polynomial& p, int exponent) {
  if (exponent < 0) throw std::invalid_argument("pow: exponent must be nonnegative");
  Polynomial result = Polynomial::constant(p.nvars(), 1.0);
  for (int i = 0; i < exponent; ++i) result = result * p;
  return result;
}

Polynomial eliminate_last_variable(const Polynomial& p) {
  const int n = p.nvars();
  if (n < 2) throw std::invalid_argument("eliminate_last_variable: need at least two variables");
  const int v = n - 1;

  Polynomial substitute = Polynomial::constant(v, 1.0);
  for (int i = 0; i < v; ++i) substitute -= Polynomial::variable(v, i);

  int max_power = 0;
  for (const auto& [e, c] : p.terms()) max_power = std::max(max_power, e[v]);
  std::vector<Polynomial> sub_powers;
  sub_powers.reserve(static_cast<std::size_t>(max_power) + 1);
  sub_powers.push_back(Polynomial::constant(v, 1.0));
  for (int k = 1; k <= max_power; ++k) sub_powers.push_back(sub_powers.back() * substitute);

  Polynomial result(v);
  for (const auto& [e, c] : p.terms()) {
    Polynomial monomial(v);
    monomial.add_term(e.truncated(), c);
    result += monomial * sub_powers[static_cast<std::size_t>(e[v])];
  }
  return result;
}

Eigen::VectorXd coefficient_vector(const Polynomial& p, const MonomialBasis& basis) {
  if (p.nvars() != basis.nvars())
    throw std::invalid_argument("coefficient_vector: variable count mismatch");
  if (p.degree() > basis.degree())
    throw std::invalid_argument("coefficient_vector: polynomial degree exceeds basis degree");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(basis.size());
  for (const auto& [e, c] : p.terms()) v(basis.index_of(e)) = c;
  return v;
}

Polynomial polynomial_from_vector(const Eigen::VectorXd& coeffs, const MonomialBasis& basis) {
  if (coeffs.size() != basis.size())
    throw std::invalid_argument("polynomial_from_vector: length mismatch");
  Polynomial p(basis.nvars());
  for (int i = 0; i < basis.size(); ++i) p.add_term(basis[i], coeffs(i));
  return p;
}

}  // namespace polyport
