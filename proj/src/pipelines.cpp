#include "airyfred/pipelines.hpp"

#include <algorithm>
#include <cmath>

#include "airyfred/fredholm.hpp"
#include "airyfred/kernels.hpp"
#include "airyfred/liu.hpp"

namespace af {

std::optional<CdfMethod> parse_method(std::string_view name) {
    if (name == "ext-airy") return CdfMethod::ext_airy;
    if (name == "contour-k") return CdfMethod::contour_k;
    if (name == "b-minus-a") return CdfMethod::b_minus_a;
    if (name == "liu-sum") return CdfMethod::liu_sum;
    return std::nullopt;
}

std::string method_name(CdfMethod method) {
    switch (method) {
    case CdfMethod::ext_airy: return "ext-airy";
    case CdfMethod::contour_k: return "contour-k";
    case CdfMethod::b_minus_a: return "b-minus-a";
    case CdfMethod::liu_sum: return "liu-sum";
    }
    return "?";
}

namespace {

double adaptive_lambda_max(const PointConfig& cfg, const QuadSettings& qs) {
    double smin = 1e300;
    for (int i = 0; i < cfg.m(); ++i)
        smin = std::min(smin, cfg.beta[i] + cfg.alpha[i] * cfg.alpha[i]);
    return std::max(qs.lambda_max, 20.0 - smin);
}

} // namespace

FredholmResult joint_cdf(const PointConfig& cfg, CdfMethod method, const QuadSettings& qs,
                         int liu_cutoff) {
    switch (method) {
    case CdfMethod::ext_airy: {
        // det(I - chi K_ext chi): the built-in Nystrom sign is the minus.
        auto assemble = [&](const std::vector<double>& nodes) {
            const int m = cfg.m(), n = static_cast<int>(nodes.size());
            const Eigen::MatrixXd A = a_tilde_matrix(cfg, nodes, qs);
            Eigen::MatrixXd K(A.rows(), A.cols());
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    auto blk = A.block(Eigen::Index(i) * n, Eigen::Index(j) * n, n, n);
                    if (i < j) {
                        Eigen::MatrixXd Bb(n, n);
                        for (int a = 0; a < n; ++a)
                            for (int b = 0; b < n; ++b)
                                Bb(a, b) = kernel_B_tilde(cfg, i + 1, nodes[a], j + 1, nodes[b]);
                        K.block(Eigen::Index(i) * n, Eigen::Index(j) * n, n, n) = blk - Bb;
                    } else {
                        K.block(Eigen::Index(i) * n, Eigen::Index(j) * n, n, n) = blk;
                    }
                }
            return Eigen::MatrixXcd(K.cast<Complex>());
        };
        return fredholm_det_halfline_assembled(assemble, cfg.m(), adaptive_lambda_max(cfg, qs),
                                               qs.halfline_nodes);
    }
    case CdfMethod::b_minus_a: {
        // det(I + B~ - A~) = det(I - (A~ - B~))
        auto assemble = [&](const std::vector<double>& nodes) {
            const Eigen::MatrixXd K = a_tilde_matrix(cfg, nodes, qs) - b_tilde_matrix(cfg, nodes);
            return Eigen::MatrixXcd(K.cast<Complex>());
        };
        return fredholm_det_halfline_assembled(assemble, cfg.m(), adaptive_lambda_max(cfg, qs),
                                               qs.halfline_nodes);
    }
    case CdfMethod::contour_k:
        return fredholm_det_contour_nystrom(cfg, qs);
    case CdfMethod::liu_sum:
        return liu::airy_cdf_via_sum(cfg, std::min(liu_cutoff, 3), qs);
    }
    throw std::invalid_argument("joint_cdf: unknown method");
}

} // namespace af
