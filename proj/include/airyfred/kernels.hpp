#pragma once

#include <Eigen/Dense>
#include <vector>

#include "airyfred/contour.hpp"
#include "airyfred/types.hpp"

namespace af {

/// f_i(w) = exp(-w^3/3 + alpha_i w^2 + beta_i w)
Complex eval_f(const PointConfig& cfg, int i, Complex w);

/// F_1 = f_1; F_i = f_i / f_{i-1} = exp(dalpha w^2 + dbeta w) for i >= 2.
Complex eval_F(const PointConfig& cfg, int i, Complex w);

/// h_i(u, v) for u on (or right of) Gamma_1L and v on Gamma_1R: i = 1 is the
/// closed form F_1(u)/(u-v); i >= 2 chains the inner left contours, which sit
/// strictly left of u, ordered u_2 (rightmost) .. u_i (leftmost).
Complex eval_h(const PointConfig& cfg, int i, Complex u, Complex v, const ContourFamily& fam);
Complex eval_h(const PointConfig& cfg, int i, Complex u, Complex v, const QuadSettings& qs);

/// h_i on the full Gamma_1L x Gamma_1R node grid.
Eigen::MatrixXcd h_matrix(const PointConfig& cfg, int i, const ContourFamily& fam);

/// K(i, z; j, u) = int dv/(2 pi i) h_i(z, v) / f_i(v) / (v - u).
Complex kernel_K(const PointConfig& cfg, int i, Complex z, int j, Complex u,
                 const ContourFamily& fam);
Complex kernel_K(const PointConfig& cfg, int i, Complex z, int j, Complex u,
                 const QuadSettings& qs);

/// Discretization of K on {1..m} x Gamma_1L with the column measure folded
/// in: entry [(i-1)N+a, (j-1)N+b] = K(i, u_a; j, u_b) * w_b.
Eigen::MatrixXcd bfK_weighted_matrix(const PointConfig& cfg, const ContourFamily& fam);

/// L1(i, z; lambda), the half-line factor with K = L1 L2, L2 = exp(lambda u).
Complex kernel_L1(const PointConfig& cfg, int i, Complex z, double lambda,
                  const ContourFamily& fam);

/// The product kernel L(lambda, theta) = sum_i over nested contours.
/// LProduct precomputes the h_i tables once; kernel_L is the one-shot form.
class LProduct {
public:
    LProduct(const PointConfig& cfg, const ContourFamily& fam);
    Complex operator()(double lambda, double theta) const;

private:
    const PointConfig& cfg_;
    const ContourFamily& fam_;
    std::vector<Eigen::MatrixXcd> weighted_h_; // w_a H_i[a,b] w_b / f_i(v_b)
};
Complex kernel_L(const PointConfig& cfg, double lambda, double theta, const ContourFamily& fam);
Complex kernel_L(const PointConfig& cfg, double lambda, double theta, const QuadSettings& qs);

/// Decomposition pieces: A1(lambda; i, gamma), A2(i, gamma; theta) on the
/// main contours, and the strictly-upper B on the imaginary axis (0 for
/// i >= j). delta = gamma' - gamma. The line rule densifies its nodes with
/// the oscillation frequency |delta + dbeta|.
Complex eval_A1(const PointConfig& cfg, double lambda, int i, double gamma,
                const ContourFamily& fam);
Complex eval_A2(const PointConfig& cfg, int i, double gamma, double theta,
                const ContourFamily& fam);
Complex eval_B_line(const PointConfig& cfg, int i, int j, double delta, const QuadSettings& qs);

/// Conjugation-stripped half-line kernels (Fredholm determinants are
/// invariant under the strip, and the raw forms overflow for moderate alpha).
double kernel_A_tilde(const PointConfig& cfg, int i, double lambda, int j, double theta,
                      const QuadSettings& qs);
double kernel_B_tilde(const PointConfig& cfg, int i, double lambda, int j, double theta);

/// Conjugated extended Airy kernel on offsets >= 0: the i >= j branch equals
/// A~, the i < j branch equals A~ - B~.
double kernel_ext_airy(const PointConfig& cfg, int i, double x_offset, int j, double y_offset,
                       const QuadSettings& qs);

/// Grid assembly of the A~ and B~ blocks on half-line nodes (shared gamma
/// grid per configuration; equals the per-entry operations to quadrature
/// accuracy).
Eigen::MatrixXd a_tilde_matrix(const PointConfig& cfg, const std::vector<double>& nodes,
                               const QuadSettings& qs);
Eigen::MatrixXd b_tilde_matrix(const PointConfig& cfg, const std::vector<double>& nodes);

} // namespace af
