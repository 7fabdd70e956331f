#include "polyport/conic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polyport {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::PrimalUnbounded: return "primal_unbounded";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStepFraction = 0.99;
const double kSqrt2 = std::sqrt(2.0);

// ---------------------------------------------------------------------------
// Cone layout: one optional second-order cone followed by PSD blocks, all
// packed into a single vector. PSD blocks use the scaled svec encoding
// (off-diagonals times sqrt(2)) so that plain dot products match trace inner
// products.

struct ConeLayout {
  bool has_soc = false;
  int soc_dim = 0;
  std::vector<int> psd_size;
  std::vector<int> psd_offset;
  int dim = 0;
  double degree = 0.0;  // barrier degree: 1 per SOC + matrix order per PSD block
};

int svec_len(int n) { return n * (n + 1) / 2; }

void smat_into(const VectorXd& v, int offset, int n, MatrixXd& M) {
  M.resize(n, n);
  int idx = offset;
  for (int col = 0; col < n; ++col) {
    M(col, col) = v(idx++);
    for (int row = col + 1; row < n; ++row) {
      const double x = v(idx++) / kSqrt2;
      M(row, col) = x;
      M(col, row) = x;
    }
  }
}

void svec_into(const MatrixXd& M, int offset, VectorXd& v) {
  const int n = static_cast<int>(M.rows());
  int idx = offset;
  for (int col = 0; col < n; ++col) {
    v(idx++) = M(col, col);
    for (int row = col + 1; row < n; ++row) v(idx++) = kSqrt2 * M(row, col);
  }
}

int svec_index(int a, int b, int n) {  // unordered pair within an n x n block
  const int col = std::min(a, b);
  const int row = std::max(a, b);
  return col * n - col * (col - 1) / 2 + (row - col);
}

// Nesterov-Todd scaling state. For the SOC, W = beta (2 v v' - J) with
// v'Jv = 1; for a PSD block, W svec(U) = svec(r' U r) and the scaled point is
// the diagonal sigma.
struct SocScaling {
  double beta = 1.0;
  VectorXd v;
};

struct PsdScaling {
  MatrixXd r;
  MatrixXd rinv;
  MatrixXd wtw_inv;  // (r r')^{-1}, cached for the KKT assembly
};

struct Scaling {
  SocScaling soc;
  std::vector<PsdScaling> psd;
  VectorXd lambda;  // scaled point, cone-vector layout
};

VectorXd cone_identity(const ConeLayout& L) {
  VectorXd e = VectorXd::Zero(L.dim);
  if (L.has_soc) e(0) = 1.0;
  for (std::size_t j = 0; j < L.psd_size.size(); ++j) {
    const int n = L.psd_size[j];
    int idx = L.psd_offset[j];
    for (int col = 0; col < n; ++col) {
      e(idx) = 1.0;
      idx += n - col;
    }
  }
  return e;
}

// How far u sits outside the cone: <= 0 means strictly interior with margin.
double boundary_violation(const ConeLayout& L, const VectorXd& u) {
  double worst = -kInf;
  if (L.has_soc) {
    const double head = u(0);
    const double tail = u.segment(1, L.soc_dim - 1).norm();
    worst = std::max(worst, tail - head);
  }
  for (std::size_t j = 0; j < L.psd_size.size(); ++j) {
    MatrixXd M;
    smat_into(u, L.psd_offset[j], L.psd_size[j], M);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(M, Eigen::EigenvaluesOnly);
    worst = std::max(worst, -es.eigenvalues().minCoeff());
  }
  return worst;
}

bool compute_scaling(const ConeLayout& L, const VectorXd& s, const VectorXd& z, Scaling& W) {
  W.lambda.resize(L.dim);
  if (L.has_soc) {
    const int n = L.soc_dim;
    const auto sb = s.head(n);
    const auto zb = z.head(n);
    const double sres2 = sb(0) * sb(0) - sb.tail(n - 1).squaredNorm();
    const double zres2 = zb(0) * zb(0) - zb.tail(n - 1).squaredNorm();
    if (sres2 <= 0.0 || zres2 <= 0.0) return false;
    const double sres = std::sqrt(sres2);
    const double zres = std::sqrt(zres2);
    W.soc.beta = std::sqrt(sres / zres);
    const double gamma = std::sqrt((1.0 + sb.dot(zb) / (sres * zres)) / 2.0);
    if (!(gamma > 0.0)) return false;
    VectorXd v = sb / sres;
    v(0) += zb(0) / zres;
    v.tail(n - 1) -= zb.tail(n - 1) / zres;
    v /= 2.0 * gamma;
    W.soc.v = v;
    // lambda = W z
    const double vz = v.dot(zb);
    VectorXd lam = 2.0 * vz * v;
    lam(0) -= zb(0);
    lam.tail(n - 1) += zb.tail(n - 1);
    W.lambda.head(n) = W.soc.beta * lam;
  }
  W.psd.resize(L.psd_size.size());
  for (std::size_t j = 0; j < L.psd_size.size(); ++j) {
    const int n = L.psd_size[j];
    MatrixXd S, Z;
    smat_into(s, L.psd_offset[j], n, S);
    smat_into(z, L.psd_offset[j], n, Z);
    Eigen::LLT<MatrixXd> ls(S);
    Eigen::LLT<MatrixXd> lz(Z);
    if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
    const MatrixXd Ls = ls.matrixL();
    const MatrixXd Lz = lz.matrixL();
    Eigen::JacobiSVD<MatrixXd> svd(Lz.transpose() * Ls,
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
    const VectorXd sig = svd.singularValues();
    if (sig.minCoeff() <= 0.0) return false;
    const VectorXd sqrt_sig = sig.cwiseSqrt();
    PsdScaling& P = W.psd[j];
    P.r = Ls * svd.matrixV() * sqrt_sig.cwiseInverse().asDiagonal();
    P.rinv = sqrt_sig.asDiagonal() * svd.matrixV().transpose() *
             Ls.triangularView<Eigen::Lower>().solve(MatrixXd::Identity(n, n));
    const MatrixXd rrt_inv = P.rinv.transpose() * P.rinv;  // hold on: (r r')^{-1} = r^{-T} r^{-1}
    P.wtw_inv = rrt_inv;
    MatrixXd Lambda = MatrixXd::Zero(n, n);
    Lambda.diagonal() = sig;
    svec_into(Lambda, L.psd_offset[j], W.lambda);
  }
  return true;
}

// J u for the SOC block: flips the sign of the tail.
VectorXd socJ(const VectorXd& u) {
  VectorXd r = -u;
  r(0) = u(0);
  return r;
}

VectorXd apply_soc_W(const SocScaling& w, const VectorXd& u, bool inverse) {
  // W = beta (2 v v' - J);  W^{-1} = beta^{-1} (2 (Jv)(Jv)' - J)
  if (!inverse) {
    VectorXd r = 2.0 * w.v.dot(u) * w.v - socJ(u);
    return w.beta * r;
  }
  const VectorXd jv = socJ(w.v);
  VectorXd r = 2.0 * jv.dot(u) * jv - socJ(u);
  return r / w.beta;
}

enum class PsdOp { W, Wt, Winv, WinvT };

MatrixXd apply_psd_W(const PsdScaling& P, const MatrixXd& U, PsdOp op) {
  switch (op) {
    case PsdOp::W: return P.r.transpose() * U * P.r;
    case PsdOp::Wt: return P.r * U * P.r.transpose();
    case PsdOp::Winv: return P.rinv.transpose() * U * P.rinv;
    case PsdOp::WinvT: return P.rinv * U * P.rinv.transpose();
  }
  return U;
}

VectorXd apply_W_family(const ConeLayout& L, const Scaling& W, const VectorXd& u, PsdOp op) {
  VectorXd out(L.dim);
  if (L.has_soc) {
    const bool inverse = (op == PsdOp::Winv || op == PsdOp::WinvT);  // symmetric W
    out.head(L.soc_dim) = apply_soc_W(W.soc, u.head(L.soc_dim), inverse);
  }
  for (std::size_t j = 0; j < L.psd_size.size(); ++j) {
    MatrixXd U;
    smat_into(u, L.psd_offset[j], L.psd_size[j], U);
    const MatrixXd R = apply_psd_W(W.psd[j], U, op);
    svec_into(R, L.psd_offset[j], out);
  }
  return out;
}

VectorXd apply_WtW_inv(const ConeLayout& L, const Scaling& W, const VectorXd& u) {
  VectorXd out(L.dim);
  if (L.has_soc) {
    const VectorXd once = apply_soc_W(W.soc, u.head(L.soc_dim), true);
    out.head(L.soc_dim) = apply_soc_W(W.soc, once, true);
  }
  for (std::size_t j = 0; j < L.psd_size.size(); ++j) {
    MatrixXd U;
    smat_into(u, L.psd_offset[j], L.psd_size[j], U);
    const MatrixXd R = W.psd[j].wtw_inv * U * W.psd[j].wtw_inv;
    svec_into(R, L.psd_offset[j], out);
  }
  return out;
}

VectorXd apply_WtW(const ConeLayout& L, const Scaling& W, const VectorXd& u) {
  return apply_W_family(L, W, apply_W_family(L, W, u, PsdOp::W), PsdOp::Wt);
}

VectorXd jordan_mul(const ConeLayout& L, const VectorXd& a, const VectorXd& b) {
  VectorXd out(L.dim);
  if (L.has_soc) {
    const int n = L.soc_dim;
    out(0) = a.head(n).dot(b.head(n));
    out.segment(1, n - 1) = a(0) * b.segment(1, n - 1) + b(0) * a.segment(1, n - 1);
  }
  for (std::size_t j = 0; j < L.psd_size.size(); ++j) {
    MatrixXd A, B;
    smat_into(a, L.psd_offset[j], L.psd_size[j], A);
    smat_into(b, L.psd_offset[j], L.psd_size[j], B);
    const MatrixXd P = 0.5 * (A * B + B * A);
    svec_into(P, L.psd_offset[j], out);
  }
  return out;
}

// Solves lambda o x = d blockwise. Returns false on a singular block.
bool jordan_div(const ConeLayout& L, const VectorXd& lambda, const VectorXd& d, VectorXd& x) {
  x.resize(L.dim);
  if (L.has_soc) {
    const int n = L.soc_dim;
    const auto lam = lambda.head(n);
    const double det = lam(0) * lam(0) - lam.tail(n - 1).squaredNorm();
    if (det <= 0.0 || lam(0) <= 0.0) return false;
    const double x0 = (lam(0) * d(0) - lam.tail(n - 1).dot(d.segment(1, n - 1))) / det;
    x(0) = x0;
    x.segment(1, n - 1) = (d.segment(1, n - 1) - x0 * lam.tail(n - 1)) / lam(0);
  }
  for (std::size_t j = 0; j < L.psd_size.size(); ++j) {
    const int n = L.psd_size[j];
    // the scaled point is diagonal, so the Lyapunov solve is entrywise
    VectorXd sig(n);
    {
      int idx = L.psd_offset[j];
      for (int col = 0; col < n; ++col) {
        sig(col) = lambda(idx);
        idx += n - col;
      }
    }
    MatrixXd D;
    smat_into(d, L.psd_offset[j], n, D);
    MatrixXd X(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const double denom = sig(r) + sig(c);
        if (denom <= 0.0) return false;
        X(r, c) = 2.0 * D(r, c) / denom;
      }
    }
    svec_into(X, L.psd_offset[j], x);
  }
  return true;
}

double soc_max_step(const VectorXd& u, const VectorXd& du) {
  const int n = static_cast<int>(u.size());
  const double c0 = u(0) * u(0) - u.tail(n - 1).squaredNorm();
  const double b0 = u(0) * du(0) - u.tail(n - 1).dot(du.tail(n - 1));
  const double a0 = du(0) * du(0) - du.tail(n - 1).squaredNorm();
  if (c0 <= 0.0) return 0.0;
  if (std::abs(a0) < 1e-300) {
    return b0 < 0.0 ? -c0 / (2.0 * b0) : kInf;
  }
  const double disc = b0 * b0 - a0 * c0;
  if (a0 > 0.0) {
    if (b0 >= 0.0 || disc < 0.0) return kInf;
    return c0 / (-b0 + std::sqrt(disc));
  }
  // a0 < 0: the quadratic opens downward and q(0) > 0, so one positive root
  return c0 / (-b0 + std::sqrt(std::max(disc, 0.0)));
}

// Largest step keeping u + alpha*du in the cone (u strictly interior).
double max_step(const ConeLayout& L, const VectorXd& u, const VectorXd& du) {
  double alpha = kInf;
  if (L.has_soc) {
    alpha = std::min(alpha, soc_max_step(u.head(L.soc_dim), du.head(L.soc_dim)));
  }
  for (std::size_t j = 0; j < L.psd_size.size(); ++j) {
    const int n = L.psd_size[j];
    MatrixXd U, D;
    smat_into(u, L.psd_offset[j], n, U);
    smat_into(du, L.psd_offset[j], n, D);
    Eigen::LLT<MatrixXd> llt(U);
    if (llt.info() != Eigen::Success) return 0.0;
    const MatrixXd Linv = llt.matrixL().solve(MatrixXd::Identity(n, n));
    const MatrixXd T = Linv * D * Linv.transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (T + T.transpose()),
                                               Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < 0.0) alpha = std::min(alpha, -1.0 / lo);
  }
  return alpha;
}

struct HsdState {
  VectorXd x;
  double w = 0.0;  // multiplier of the normalization equality
  VectorXd s, z;
  double tau = 1.0, kappa = 1.0;
};

}  // namespace

ConicSolution solve(const ConicProgram& prog, const SolverSettings& settings) {
  const int m = prog.tms_length();
  if (m <= 0) throw std::invalid_argument("solve: empty program");
  if (prog.epsilon < 0.0) throw std::invalid_argument("solve: epsilon must be nonnegative");
  if (prog.equality_index < 0 || prog.equality_index >= m)
    throw std::invalid_argument("solve: equality index out of range");
  if (prog.psd_blocks.empty()) throw std::invalid_argument("solve: need at least one PSD block");
  for (const LinearMatrixMap& B : prog.psd_blocks) {
    B.for_each_entry([&](int, int, int pos, double) {
      if (pos < 0 || pos >= m) throw std::invalid_argument("solve: block references index out of range");
    });
  }

  const bool has_soc = prog.epsilon > 0.0;
  const int nx = has_soc ? m + 1 : m;
  const int ycol = has_soc ? 1 : 0;

  ConeLayout L;
  L.has_soc = has_soc;
  L.soc_dim = has_soc ? m + 1 : 0;
  L.dim = L.soc_dim;
  L.degree = has_soc ? 1.0 : 0.0;
  for (const LinearMatrixMap& B : prog.psd_blocks) {
    L.psd_size.push_back(B.size());
    L.psd_offset.push_back(L.dim);
    L.dim += svec_len(B.size());
    L.degree += B.size();
  }

  // G maps (t, y) to the negated cone slack: s = -G x, h = 0.
  MatrixXd G = MatrixXd::Zero(L.dim, nx);
  if (has_soc) G.topLeftCorner(L.soc_dim, L.soc_dim) = -MatrixXd::Identity(L.soc_dim, L.soc_dim);
  for (std::size_t j = 0; j < prog.psd_blocks.size(); ++j) {
    const LinearMatrixMap& B = prog.psd_blocks[j];
    const int off = L.psd_offset[j];
    const int n = B.size();
    B.for_each_entry([&](int a, int b, int pos, double wgt) {
      const int row = off + svec_index(a, b, n);
      G(row, ycol + pos) -= (a == b) ? wgt : kSqrt2 * wgt;
    });
  }
  const MatrixXd Gt = G.transpose();

  VectorXd ct = VectorXd::Zero(nx);
  if (has_soc) ct(0) = prog.epsilon;
  ct.segment(ycol, m) = prog.c;
  const double ct_scale = 1.0 + ct.norm();
  const int eqcol = ycol + prog.equality_index;

  HsdState st;
  st.x = VectorXd::Zero(nx);
  st.s = cone_identity(L);
  st.z = st.s;

  const double nu = L.degree;

  ConicSolution sol;
  sol.psd_duals.resize(prog.psd_blocks.size());

  auto package_point = [&](SolveStatus status, int iters, double pres, double dres, double gap) {
    sol.status = status;
    sol.iterations = iters;
    sol.primal_residual = pres;
    sol.dual_residual = dres;
    sol.gap = gap;
    const double tau = std::max(st.tau, 1e-300);
    const VectorXd yv = st.x.segment(ycol, m) / tau;
    sol.y = Tms(prog.nvars, prog.degree, yv);
    sol.t = has_soc ? st.x(0) / tau : yv.norm();
    sol.objective = prog.c.dot(yv) + prog.epsilon * sol.t;
    for (std::size_t j = 0; j < prog.psd_blocks.size(); ++j) {
      MatrixXd Z;
      smat_into(st.z, L.psd_offset[j], L.psd_size[j], Z);
      sol.psd_duals[j] = Z / tau;
    }
    if (has_soc) {
      sol.soc_dual_eta = st.z(0) / tau;
      sol.soc_dual_q = st.z.segment(1, m) / tau;
    } else {
      sol.soc_dual_eta = 0.0;
      sol.soc_dual_q = VectorXd();
    }
    sol.equality_dual = -st.w / tau;
    return sol;
  };

  double pres = kInf, dres = kInf, gap = kInf;
  int iter = 0;
  for (;; ++iter) {
    // HSD residuals
    VectorXd rx = Gt * st.z + ct * st.tau;
    rx(eqcol) += st.w;
    const double ry = st.x(eqcol) - st.tau;
    const VectorXd rz = G * st.x + st.s;
    const double rt = ct.dot(st.x) + st.w - st.kappa;

    const double sz = st.s.dot(st.z);
    const double mu = (sz + st.tau * st.kappa) / (nu + 1.0);

    const double pobj = ct.dot(st.x) / st.tau;
    const double dobj = -st.w / st.tau;
    gap = sz / (st.tau * st.tau);
    pres = std::max(std::abs(ry) / 2.0, rz.norm()) / st.tau;
    dres = rx.norm() / (st.tau * ct_scale);

    if (settings.record_trace) {
      sol.trace.push_back({pobj, dobj, gap, pres, dres});
    }

    if (pres <= settings.feas_tol && dres <= settings.feas_tol &&
        gap <= settings.gap_tol * (1.0 + std::abs(pobj))) {
      return package_point(SolveStatus::Optimal, iter, pres, dres, gap);
    }

    // Infeasibility / unboundedness certificates from the homogeneous ray.
    const double cx = ct.dot(st.x);
    if (cx < 0.0) {
      const double resid = std::max(std::abs(st.x(eqcol)), (G * st.x + st.s).norm());
      if (resid / (-cx) <= settings.feas_tol) {
        return package_point(SolveStatus::PrimalUnbounded, iter, pres, dres, gap);
      }
    }
    if (st.w < 0.0) {
      VectorXd dual_res = Gt * st.z;
      dual_res(eqcol) += st.w;
      if (dual_res.norm() / (-st.w) <= settings.feas_tol) {
        return package_point(SolveStatus::Infeasible, iter, pres, dres, gap);
      }
    }

    if (iter >= settings.max_iter) {
      return package_point(SolveStatus::MaxIterations, iter, pres, dres, gap);
    }
    if (st.tau <= 1e-12 * std::max(1.0, st.kappa) || !std::isfinite(mu)) {
      return package_point(SolveStatus::NumericalFailure, iter, pres, dres, gap);
    }

    Scaling W;
    if (!compute_scaling(L, st.s, st.z, W)) {
      return package_point(SolveStatus::NumericalFailure, iter, pres, dres, gap);
    }

    // KKT: eliminate the cone direction, factor H = G'(W'W)^{-1}G once.
    MatrixXd M1(L.dim, nx);
    for (int col = 0; col < nx; ++col) M1.col(col) = apply_WtW_inv(L, W, G.col(col));
    MatrixXd H = Gt * M1;
    H.diagonal().array() += 1e-13 * (1.0 + H.trace() / nx);
    Eigen::LDLT<MatrixXd> Hf(H);
    if (Hf.info() != Eigen::Success) {
      return package_point(SolveStatus::NumericalFailure, iter, pres, dres, gap);
    }
    VectorXd eq_unit = VectorXd::Zero(nx);
    eq_unit(eqcol) = 1.0;
    const VectorXd HiA = Hf.solve(eq_unit);
    const double aHa = HiA(eqcol);
    if (!(aHa > 0.0) || !std::isfinite(aHa)) {
      return package_point(SolveStatus::NumericalFailure, iter, pres, dres, gap);
    }

    auto solve3_raw = [&](const VectorXd& r1, double r2, const VectorXd& r3, VectorXd& dx,
                          double& dw, VectorXd& dz) {
      const VectorXd rhs = r1 + Gt * apply_WtW_inv(L, W, r3);
      const VectorXd Hir = Hf.solve(rhs);
      dw = (Hir(eqcol) - r2) / aHa;
      dx = Hir - HiA * dw;
      dz = apply_WtW_inv(L, W, G * dx - r3);
    };
    auto solve3 = [&](const VectorXd& r1, double r2, const VectorXd& r3, VectorXd& dx,
                      double& dw, VectorXd& dz) {
      solve3_raw(r1, r2, r3, dx, dw, dz);
      // one step of iterative refinement keeps the KKT solve honest near the
      // boundary where W is ill-conditioned
      VectorXd e1 = r1 - (Gt * dz);
      e1(eqcol) -= dw;
      const double e2 = r2 - dx(eqcol);
      const VectorXd e3 = r3 - (G * dx - apply_WtW(L, W, dz));
      VectorXd fx;
      double fw;
      VectorXd fz;
      solve3_raw(e1, e2, e3, fx, fw, fz);
      dx += fx;
      dw += fw;
      dz += fz;
    };

    // Constant-column solution used to recover the tau direction.
    VectorXd u2x, u2z;
    double u2w;
    solve3(-ct, 1.0, VectorXd::Zero(L.dim), u2x, u2w, u2z);
    const double den = ct.dot(u2x) + u2w + st.kappa / st.tau;
    if (!(std::abs(den) > 1e-300) || !std::isfinite(den)) {
      return package_point(SolveStatus::NumericalFailure, iter, pres, dres, gap);
    }

    auto direction = [&](double sigf, const VectorXd& ds_rhs, double dk_rhs, VectorXd& dx,
                         double& dw, VectorXd& dz, VectorXd& ds, double& dtau,
                         double& dkappa) -> bool {
      VectorXd Ls;
      if (!jordan_div(L, W.lambda, ds_rhs, Ls)) return false;
      const VectorXd WtLs = apply_W_family(L, W, Ls, PsdOp::Wt);
      VectorXd u1x, u1z;
      double u1w;
      solve3(-sigf * rx, -sigf * ry, -sigf * rz - WtLs, u1x, u1w, u1z);
      const double num = -sigf * rt + dk_rhs / st.tau - (ct.dot(u1x) + u1w);
      dtau = num / den;
      dx = u1x + dtau * u2x;
      dw = u1w + dtau * u2w;
      dz = u1z + dtau * u2z;
      ds = WtLs - apply_WtW(L, W, dz);
      dkappa = (dk_rhs - st.kappa * dtau) / st.tau;
      return true;
    };

    const VectorXd lam2 = jordan_mul(L, W.lambda, W.lambda);
    const VectorXd e = cone_identity(L);

    // Predictor (affine direction, sigma = 0).
    VectorXd dxa, dza, dsa;
    double dwa, dtaua, dkappaa;
    if (!direction(1.0, -lam2, -st.tau * st.kappa, dxa, dwa, dza, dsa, dtaua, dkappaa)) {
      return package_point(SolveStatus::NumericalFailure, iter, pres, dres, gap);
    }
    double alpha_aff = std::min(
        {max_step(L, st.s, dsa), max_step(L, st.z, dza),
         dtaua < 0.0 ? -st.tau / dtaua : kInf, dkappaa < 0.0 ? -st.kappa / dkappaa : kInf});
    alpha_aff = std::min(alpha_aff, 1.0);
    double sigma = std::pow(1.0 - alpha_aff, 3);
    sigma = std::min(1.0, std::max(0.0, sigma));

    // Corrector (combined direction).
    const VectorXd corr = jordan_mul(L, apply_W_family(L, W, dsa, PsdOp::WinvT),
                                     apply_W_family(L, W, dza, PsdOp::W));
    const VectorXd ds_rhs = -lam2 - corr + sigma * mu * e;
    const double dk_rhs = -st.tau * st.kappa - dtaua * dkappaa + sigma * mu;
    VectorXd dx, dz, ds;
    double dw, dtau, dkappa;
    if (!direction(1.0 - sigma, ds_rhs, dk_rhs, dx, dw, dz, ds, dtau, dkappa)) {
      return package_point(SolveStatus::NumericalFailure, iter, pres, dres, gap);
    }

    const double amax = std::min(
        {max_step(L, st.s, ds), max_step(L, st.z, dz), dtau < 0.0 ? -st.tau / dtau : kInf,
         dkappa < 0.0 ? -st.kappa / dkappa : kInf});
    const double alpha = std::min(1.0, kStepFraction * amax);
    if (!(alpha > 1e-14) || !std::isfinite(alpha)) {
      return package_point(SolveStatus::NumericalFailure, iter, pres, dres, gap);
    }

    st.x += alpha * dx;
    st.w += alpha * dw;
    st.z += alpha * dz;
    st.s += alpha * ds;
    st.tau += alpha * dtau;
    st.kappa += alpha * dkappa;
  }
}

SosCertificate recover_sos_certificate(const ConicProgram& prog, const ConicSolution& sol) {
  if (sol.status != SolveStatus::Optimal)
    throw std::invalid_argument("recover_sos_certificate: solution is not optimal");

  SosCertificate cert;
  cert.gamma = sol.equality_dual;
  cert.gram = sol.psd_duals;

  const MonomialBasis basis(prog.nvars, prog.degree);
  if (sol.soc_dual_q.size() > 0) {
    cert.q = polynomial_from_vector(sol.soc_dual_q, basis);
  } else {
    cert.q = Polynomial(prog.nvars);
  }

  // Reconstruct the weighted-SOS part coefficientwise from the block maps:
  // entry (a,b) of block j contributes weight * G_j(a,b) to each referenced
  // tms position, twice for off-diagonal entries.
  Eigen::VectorXd recon = Eigen::VectorXd::Zero(prog.tms_length());
  for (std::size_t j = 0; j < prog.psd_blocks.size(); ++j) {
    const Eigen::MatrixXd& Gj = sol.psd_duals[j];
    prog.psd_blocks[j].for_each_entry([&](int a, int b, int pos, double wgt) {
      recon(pos) += (a == b ? 1.0 : 2.0) * wgt * Gj(a, b);
    });
  }
  recon(prog.equality_index) += cert.gamma;
  if (sol.soc_dual_q.size() > 0) recon += sol.soc_dual_q;

  cert.residual_norm = (prog.c - recon).norm();
  return cert;
}

}  // namespace polyport
