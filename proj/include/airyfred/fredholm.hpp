#pragma once

#include <Eigen/Dense>
#include <functional>

#include "airyfred/types.hpp"

namespace af {

/// Determinant pieces kept in scaled form: det = phase * exp(log_abs).
struct ScaledDet {
    double log_abs = 0.0;
    Complex phase{1.0, 0.0};
    Complex value() const { return phase * std::exp(log_abs); }
};

/// Determinant via row-pivoted LU, accumulating log-magnitude and phase
/// separately. Throws NumericsError on non-finite entries or a pivot below
/// 1e-300 in magnitude.
ScaledDet det_lu_scaled(const Eigen::MatrixXcd& M);
Complex det_lu(const Eigen::MatrixXcd& M);

/// Assembles the (m*n) x (m*n) matrix of raw kernel values on the given
/// half-line nodes, blocks indexed (i-1)*n + a.
using HalflineAssembler = std::function<Eigen::MatrixXcd(const std::vector<double>& nodes)>;

/// Nystrom determinant det(I - sqrt(w_a w_b) K) on {1..m} x (0, lambda_max],
/// evaluated at n_nodes and 2*n_nodes Gauss-Legendre nodes (the sign under I
/// is minus; callers negate their kernel for det(I + K)).
FredholmResult fredholm_det_halfline(const BlockKernel& kernel, int m, double lambda_max,
                                     int n_nodes);
FredholmResult fredholm_det_halfline_assembled(const HalflineAssembler& assemble, int m,
                                               double lambda_max, int n_nodes);

/// det(I + K) with K on {1..m} x Gamma_L, discretized on the contour nodes
/// with the 1/(2*pi*i) measure folded into the weights. Two node scales.
FredholmResult fredholm_det_contour_nystrom(const PointConfig& cfg, const QuadSettings& qs);

/// Partial sums of the Fredholm series det(I + K) = sum_k e_k, where e_k is
/// the k-fold-integral term evaluated on one fixed contour node set (it is
/// the k-th elementary symmetric function of the discretized kernel matrix,
/// recovered from traces by Newton's identities). History holds S_0..S_kmax.
FredholmResult fredholm_det_contour_series(const PointConfig& cfg, const QuadSettings& qs,
                                           int k_max);

} // namespace af
