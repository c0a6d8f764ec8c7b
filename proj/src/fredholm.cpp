#include "airyfred/fredholm.hpp"

#include <cmath>

#include "airyfred/gauss.hpp"
#include "airyfred/kernels.hpp"

namespace af {

ScaledDet det_lu_scaled(const Eigen::MatrixXcd& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("det_lu: matrix must be square");
    if (!M.allFinite()) throw NumericsError("det_lu: non-finite matrix entries");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    ScaledDet out;
    out.phase = Complex(double(lu.permutationP().determinant()), 0.0);
    const auto diag = lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
        const double mag = std::abs(diag[i]);
        if (mag < 1e-300) throw NumericsError("det_lu: numerically singular pivot");
        out.log_abs += std::log(mag);
        out.phase *= diag[i] / mag;
    }
    return out;
}

Complex det_lu(const Eigen::MatrixXcd& M) { return det_lu_scaled(M).value(); }

FredholmResult fredholm_det_halfline_assembled(const HalflineAssembler& assemble, int m,
                                               double lambda_max, int n_nodes) {
    if (m < 1 || n_nodes < 2) throw std::invalid_argument("fredholm_det_halfline: bad sizes");
    if (!(lambda_max > 0)) throw std::invalid_argument("fredholm_det_halfline: lambda_max must be positive");
    FredholmResult res;
    for (int scale : {1, 2}) {
        const int n = n_nodes * scale;
        const GaussLegendre g = gauss_legendre_on(n, 0.0, lambda_max);
        Eigen::MatrixXcd K = assemble(g.nodes);
        if (K.rows() != Eigen::Index(m) * n || K.cols() != K.rows())
            throw std::invalid_argument("fredholm_det_halfline: assembler returned wrong shape");
        Eigen::VectorXd sw(Eigen::Index(m) * n);
        for (int i = 0; i < m; ++i)
            for (int a = 0; a < n; ++a) sw[Eigen::Index(i) * n + a] = std::sqrt(g.weights[a]);
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(K.rows(), K.cols());
        M.noalias() -= (sw.asDiagonal() * K * sw.asDiagonal()).eval();
        res.push(n, det_lu(M));
    }
    return res;
}

FredholmResult fredholm_det_halfline(const BlockKernel& kernel, int m, double lambda_max,
                                     int n_nodes) {
    auto assemble = [&](const std::vector<double>& nodes) {
        const int n = static_cast<int>(nodes.size());
        Eigen::MatrixXcd K(Eigen::Index(m) * n, Eigen::Index(m) * n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        K(Eigen::Index(i) * n + a, Eigen::Index(j) * n + b) =
                            kernel.evaluate(i + 1, nodes[a], j + 1, nodes[b]);
        return K;
    };
    return fredholm_det_halfline_assembled(assemble, m, lambda_max, n_nodes);
}

FredholmResult fredholm_det_contour_nystrom(const PointConfig& cfg, const QuadSettings& qs) {
    FredholmResult res;
    for (int scale : {1, 2}) {
        ContourFamily family(cfg, qs, scale);
        const Eigen::MatrixXcd K = bfK_weighted_matrix(cfg, family);
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(K.rows(), K.cols()) + K;
        res.push(family.left_main().size(), det_lu(M));
    }
    return res;
}

FredholmResult fredholm_det_contour_series(const PointConfig& cfg, const QuadSettings& qs,
                                           int k_max) {
    if (k_max < 0 || k_max > 6)
        throw std::invalid_argument("fredholm_det_contour_series: cost guard requires 0 <= k_max <= 6");
    ContourFamily family(cfg, qs, 1);
    const Eigen::MatrixXcd K = bfK_weighted_matrix(cfg, family);

    // Power sums of the discretized kernel, then elementary symmetric
    // functions via Newton's identities; S_k = sum_{j<=k} e_j.
    std::vector<Complex> p(k_max + 1), e(k_max + 1);
    Eigen::MatrixXcd P = K;
    for (int j = 1; j <= k_max; ++j) {
        p[j] = P.trace();
        if (j < k_max) P = (P * K).eval();
    }
    e[0] = Complex(1.0);
    for (int k = 1; k <= k_max; ++k) {
        Complex acc{};
        double sgn = 1.0;
        for (int j = 1; j <= k; ++j) {
            acc += sgn * e[k - j] * p[j];
            sgn = -sgn;
        }
        e[k] = acc / double(k);
    }
    FredholmResult res;
    Complex sum{};
    for (int k = 0; k <= k_max; ++k) {
        sum += e[k];
        res.push(k, sum);
    }
    return res;
}

} // namespace af
