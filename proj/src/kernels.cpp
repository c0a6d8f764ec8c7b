#include "airyfred/kernels.hpp"

#include <cmath>

#include "airyfred/airy.hpp"
#include "airyfred/gauss.hpp"

namespace af {

namespace {

Eigen::VectorXcd weight_vector(const QuadratureContour& c) {
    return Eigen::Map<const Eigen::VectorXcd>(c.weights.data(), c.size());
}

// E[a,b] = 1/(x_a - y_b)
Eigen::MatrixXcd cauchy_table(const QuadratureContour& x, const QuadratureContour& y) {
    Eigen::MatrixXcd E(x.size(), y.size());
    for (int a = 0; a < x.size(); ++a)
        for (int b = 0; b < y.size(); ++b) E(a, b) = 1.0 / (x.points[a] - y.points[b]);
    return E;
}

void check_inner_ordering(const PointConfig& cfg, int i, Complex u, const ContourFamily& fam) {
    for (int j = 2; j <= i; ++j)
        if (!ContourFamily::right_of(fam.left_in(j), u))
            throw std::invalid_argument(
                "contour-ordering violation: u is not strictly right of the inner contours");
    (void)cfg;
}

} // namespace

Complex eval_f(const PointConfig& cfg, int i, Complex w) {
    cfg.check_index(i);
    const double a = cfg.alpha[i - 1], b = cfg.beta[i - 1];
    return std::exp(-w * w * w / 3.0 + a * w * w + b * w);
}

Complex eval_F(const PointConfig& cfg, int i, Complex w) {
    cfg.check_index(i);
    if (i == 1) return eval_f(cfg, 1, w);
    const double da = cfg.alpha[i - 1] - cfg.alpha[i - 2];
    const double db = cfg.beta[i - 1] - cfg.beta[i - 2];
    return std::exp(da * w * w + db * w);
}

namespace {

// Row vector h_i(u, .) over the nodes of the right main contour.
Eigen::RowVectorXcd h_row(const PointConfig& cfg, int i, Complex u, const ContourFamily& fam) {
    const QuadratureContour& right = fam.right_main();
    Eigen::RowVectorXcd row(right.size());
    if (i == 1) {
        const Complex F1u = eval_F(cfg, 1, u);
        for (int b = 0; b < right.size(); ++b) row[b] = F1u / (u - right.points[b]);
        return row;
    }
    // chain over Gamma_{2,L}^in .. Gamma_{i,L}^in
    const QuadratureContour* prev = &fam.left_in(2);
    Eigen::RowVectorXcd cur(prev->size());
    for (int c = 0; c < prev->size(); ++c) cur[c] = 1.0 / (u - prev->points[c]);
    for (int j = 2; j <= i; ++j) {
        const QuadratureContour& cj = fam.left_in(j);
        Eigen::VectorXcd wj(cj.size());
        for (int c = 0; c < cj.size(); ++c) wj[c] = cj.weights[c] * eval_F(cfg, j, cj.points[c]);
        cur = cur.cwiseProduct(wj.transpose());
        if (j < i) {
            const QuadratureContour& next = fam.left_in(j + 1);
            cur = cur * cauchy_table(cj, next);
            prev = &next;
        } else {
            cur = cur * cauchy_table(cj, right);
        }
    }
    return eval_F(cfg, 1, u) * cur;
}

} // namespace

Complex eval_h(const PointConfig& cfg, int i, Complex u, Complex v, const ContourFamily& fam) {
    cfg.check_index(i);
    check_inner_ordering(cfg, i, u, fam);
    if (!(v.real() > 0.0))
        throw std::invalid_argument("contour-ordering violation: v must lie in the right half plane");
    if (i == 1) return eval_F(cfg, 1, u) / (u - v);
    // same chain as h_row but ending at the single point v
    const QuadratureContour* cj = &fam.left_in(2);
    Eigen::RowVectorXcd cur(cj->size());
    for (int c = 0; c < cj->size(); ++c) cur[c] = 1.0 / (u - cj->points[c]);
    for (int j = 2; j <= i; ++j) {
        const QuadratureContour& contour = fam.left_in(j);
        Eigen::VectorXcd wj(contour.size());
        for (int c = 0; c < contour.size(); ++c)
            wj[c] = contour.weights[c] * eval_F(cfg, j, contour.points[c]);
        cur = cur.cwiseProduct(wj.transpose());
        if (j < i) {
            cur = cur * cauchy_table(contour, fam.left_in(j + 1));
        } else {
            Complex acc{};
            for (int c = 0; c < contour.size(); ++c) acc += cur[c] / (contour.points[c] - v);
            return eval_F(cfg, 1, u) * acc;
        }
    }
    return eval_F(cfg, 1, u) / (u - v); // unreachable
}

Complex eval_h(const PointConfig& cfg, int i, Complex u, Complex v, const QuadSettings& qs) {
    ContourFamily fam(cfg, qs);
    return eval_h(cfg, i, u, v, fam);
}

Eigen::MatrixXcd h_matrix(const PointConfig& cfg, int i, const ContourFamily& fam) {
    cfg.check_index(i);
    const QuadratureContour& left = fam.left_main();
    const QuadratureContour& right = fam.right_main();
    Eigen::MatrixXcd H(left.size(), right.size());
    if (i == 1) {
        for (int a = 0; a < left.size(); ++a) {
            const Complex F1 = eval_F(cfg, 1, left.points[a]);
            for (int b = 0; b < right.size(); ++b)
                H(a, b) = F1 / (left.points[a] - right.points[b]);
        }
        return H;
    }
    Eigen::MatrixXcd cur = cauchy_table(left, fam.left_in(2));
    for (int j = 2; j <= i; ++j) {
        const QuadratureContour& cj = fam.left_in(j);
        Eigen::VectorXcd wj(cj.size());
        for (int c = 0; c < cj.size(); ++c) wj[c] = cj.weights[c] * eval_F(cfg, j, cj.points[c]);
        cur = cur * wj.asDiagonal();
        cur = (j < i) ? Eigen::MatrixXcd(cur * cauchy_table(cj, fam.left_in(j + 1)))
                      : Eigen::MatrixXcd(cur * cauchy_table(cj, right));
    }
    for (int a = 0; a < left.size(); ++a) cur.row(a) *= eval_F(cfg, 1, left.points[a]);
    return cur;
}

Complex kernel_K(const PointConfig& cfg, int i, Complex z, int j, Complex u,
                 const ContourFamily& fam) {
    cfg.check_index(i);
    cfg.check_index(j);
    check_inner_ordering(cfg, i, z, fam);
    if (!(z.real() < 0.0 && u.real() < 0.0))
        throw std::invalid_argument("contour-ordering violation: z, u must lie in the left half plane");
    const QuadratureContour& right = fam.right_main();
    const Eigen::RowVectorXcd row = h_row(cfg, i, z, fam);
    Complex acc{};
    for (int b = 0; b < right.size(); ++b)
        acc += right.weights[b] * row[b] / eval_f(cfg, i, right.points[b]) / (right.points[b] - u);
    return acc;
}

Complex kernel_K(const PointConfig& cfg, int i, Complex z, int j, Complex u,
                 const QuadSettings& qs) {
    ContourFamily fam(cfg, qs);
    return kernel_K(cfg, i, z, j, u, fam);
}

Eigen::MatrixXcd bfK_weighted_matrix(const PointConfig& cfg, const ContourFamily& fam) {
    const int m = cfg.m();
    const QuadratureContour& left = fam.left_main();
    const QuadratureContour& right = fam.right_main();
    const int N = left.size();
    const Eigen::MatrixXcd E_ru = cauchy_table(right, left); // 1/(v_c - u_b)
    const Eigen::VectorXcd wl = weight_vector(left);

    Eigen::MatrixXcd M(Eigen::Index(m) * N, Eigen::Index(m) * N);
    for (int i = 1; i <= m; ++i) {
        Eigen::VectorXcd r(right.size());
        for (int c = 0; c < right.size(); ++c)
            r[c] = right.weights[c] / eval_f(cfg, i, right.points[c]);
        const Eigen::MatrixXcd Ki = h_matrix(cfg, i, fam) * r.asDiagonal() * E_ru;
        const Eigen::MatrixXcd KiW = Ki * wl.asDiagonal();
        for (int j = 0; j < m; ++j) M.block((i - 1) * N, j * N, N, N) = KiW;
    }
    return M;
}

Complex kernel_L1(const PointConfig& cfg, int i, Complex z, double lambda,
                  const ContourFamily& fam) {
    cfg.check_index(i);
    const QuadratureContour& right = fam.right_main();
    const Eigen::RowVectorXcd row = h_row(cfg, i, z, fam);
    Complex acc{};
    for (int b = 0; b < right.size(); ++b)
        acc += right.weights[b] * row[b] * std::exp(-lambda * right.points[b]) /
               eval_f(cfg, i, right.points[b]);
    return acc;
}

LProduct::LProduct(const PointConfig& cfg, const ContourFamily& fam) : cfg_(cfg), fam_(fam) {
    const QuadratureContour& left = fam.left_main();
    const QuadratureContour& right = fam.right_main();
    for (int i = 1; i <= cfg.m(); ++i) {
        Eigen::MatrixXcd H = h_matrix(cfg, i, fam);
        for (int a = 0; a < left.size(); ++a) H.row(a) *= left.weights[a];
        for (int b = 0; b < right.size(); ++b)
            H.col(b) *= right.weights[b] / eval_f(cfg, i, right.points[b]);
        weighted_h_.push_back(std::move(H));
    }
}

Complex LProduct::operator()(double lambda, double theta) const {
    if (!(lambda > 0.0 && theta > 0.0))
        throw std::invalid_argument("kernel_L: lambda, theta must be positive");
    const QuadratureContour& left = fam_.left_main();
    const QuadratureContour& right = fam_.right_main();
    Eigen::VectorXcd l(left.size()), r(right.size());
    for (int a = 0; a < left.size(); ++a) l[a] = std::exp(lambda * left.points[a]);
    for (int b = 0; b < right.size(); ++b) r[b] = std::exp(-theta * right.points[b]);
    Complex acc{};
    for (const auto& H : weighted_h_) acc += (l.transpose() * H * r).value();
    return acc;
}

Complex kernel_L(const PointConfig& cfg, double lambda, double theta, const ContourFamily& fam) {
    return LProduct(cfg, fam)(lambda, theta);
}

Complex kernel_L(const PointConfig& cfg, double lambda, double theta, const QuadSettings& qs) {
    ContourFamily fam(cfg, qs);
    return kernel_L(cfg, lambda, theta, fam);
}

Complex eval_A1(const PointConfig& cfg, double lambda, int i, double gamma,
                const ContourFamily& fam) {
    cfg.check_index(i);
    return integrate(fam.left_main(), [&](Complex u) {
        return eval_f(cfg, i, u) * std::exp((lambda + gamma) * u);
    });
}

Complex eval_A2(const PointConfig& cfg, int i, double gamma, double theta,
                const ContourFamily& fam) {
    cfg.check_index(i);
    return integrate(fam.right_main(), [&](Complex v) {
        return std::exp(-(theta + gamma) * v) / eval_f(cfg, i, v);
    });
}

Complex eval_B_line(const PointConfig& cfg, int i, int j, double delta, const QuadSettings& qs) {
    cfg.check_index(i);
    cfg.check_index(j);
    if (i >= j) return Complex(0.0); // strict upper-triangular extension
    const double da = cfg.alpha[j - 1] - cfg.alpha[i - 1];
    const double db = cfg.beta[j - 1] - cfg.beta[i - 1];
    const double trunc = std::max(qs.line_truncation, std::sqrt(48.0 / da));
    const double freq = std::abs(delta + db);
    ContourSpec spec;
    spec.kind = ContourSpec::Kind::vertical_line;
    spec.vertex = {0.0, 0.0};
    spec.truncation = trunc;
    // total phase freq * 2T over the line plus a base density for the
    // Gaussian factor; same budget rule as the rays
    spec.nodes_per_segment =
        std::max({qs.line_nodes, int(0.9 * freq * 2.0 * trunc) + 32, int(7.0 * trunc)});
    const QuadratureContour line = build_contour(spec);
    return integrate(line, [&](Complex w) { return std::exp((delta + db) * w + da * w * w); });
}

namespace {

// Cutoff for int_0^inf e^{-d*g} Ai(a+g) Ai(b+g) dg: start at the configured
// 18 - min(a, b) and extend until the log-envelope drops below -41.
double gamma_cutoff(double d, double a, double b) {
    auto env = [&](double g) {
        auto decay = [](double x) { return x > 0.0 ? -(2.0 / 3.0) * x * std::sqrt(x) : 0.0; };
        return -d * g + decay(a + g) + decay(b + g);
    };
    double g = std::max(1.0, 18.0 - std::min(a, b));
    while (g < 120.0 && env(g) > -41.0) g += 2.0;
    return g;
}

} // namespace

double kernel_A_tilde(const PointConfig& cfg, int i, double lambda, int j, double theta,
                      const QuadSettings& qs) {
    cfg.check_index(i);
    cfg.check_index(j);
    const double d = cfg.alpha[i - 1] - cfg.alpha[j - 1];
    const double a = lambda + cfg.beta[i - 1] + cfg.alpha[i - 1] * cfg.alpha[i - 1];
    const double b = theta + cfg.beta[j - 1] + cfg.alpha[j - 1] * cfg.alpha[j - 1];
    const double gmax = gamma_cutoff(d, a, b);
    const int n = std::max(qs.gamma_nodes, int(3.0 * gmax));
    const GaussLegendre g = gauss_legendre_on(n, 0.0, gmax);
    double acc = 0.0;
    for (int c = 0; c < n; ++c)
        acc += g.weights[c] * std::exp(-d * g.nodes[c]) * airy_ai(a + g.nodes[c]) *
               airy_ai(b + g.nodes[c]);
    return acc;
}

double kernel_B_tilde(const PointConfig& cfg, int i, double lambda, int j, double theta) {
    cfg.check_index(i);
    cfg.check_index(j);
    if (i >= j) return 0.0;
    const double ai = cfg.alpha[i - 1], aj = cfg.alpha[j - 1];
    const double bi = cfg.beta[i - 1], bj = cfg.beta[j - 1];
    const double gap = aj - ai;
    const double strip = 2.0 / 3.0 * (ai * ai * ai - aj * aj * aj) + (lambda + bi) * ai -
                         (theta + bj) * aj;
    const double diff = bj + theta - bi - lambda;
    return std::exp(strip - diff * diff / (4.0 * gap)) / (2.0 * std::sqrt(M_PI * gap));
}

double kernel_ext_airy(const PointConfig& cfg, int i, double x_offset, int j, double y_offset,
                       const QuadSettings& qs) {
    if (x_offset < 0.0 || y_offset < 0.0)
        throw std::invalid_argument("kernel_ext_airy: offsets must be nonnegative");
    const double a = kernel_A_tilde(cfg, i, x_offset, j, y_offset, qs);
    if (i >= j) return a;
    return a - kernel_B_tilde(cfg, i, x_offset, j, y_offset);
}

Eigen::MatrixXd a_tilde_matrix(const PointConfig& cfg, const std::vector<double>& nodes,
                               const QuadSettings& qs) {
    const int m = cfg.m();
    const int n = static_cast<int>(nodes.size());
    // One gamma grid shared by all blocks: worst-case cutoff over (i, j).
    double gmax = 1.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double a = nodes[0] + cfg.beta[i] + cfg.alpha[i] * cfg.alpha[i];
            const double b = nodes[0] + cfg.beta[j] + cfg.alpha[j] * cfg.alpha[j];
            gmax = std::max(gmax, gamma_cutoff(cfg.alpha[i] - cfg.alpha[j], a, b));
        }
    const int G = std::max(qs.gamma_nodes, int(3.0 * gmax));
    const GaussLegendre g = gauss_legendre_on(G, 0.0, gmax);

    std::vector<Eigen::MatrixXd> P(m, Eigen::MatrixXd(n, G));
    for (int i = 0; i < m; ++i) {
        const double shift = cfg.beta[i] + cfg.alpha[i] * cfg.alpha[i];
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < G; ++c) P[i](a, c) = airy_ai(nodes[a] + shift + g.nodes[c]);
    }
    Eigen::MatrixXd K(Eigen::Index(m) * n, Eigen::Index(m) * n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXd we(G);
            for (int c = 0; c < G; ++c)
                we[c] = g.weights[c] * std::exp(-(cfg.alpha[i] - cfg.alpha[j]) * g.nodes[c]);
            K.block(Eigen::Index(i) * n, Eigen::Index(j) * n, n, n) =
                P[i] * we.asDiagonal() * P[j].transpose();
        }
    return K;
}

Eigen::MatrixXd b_tilde_matrix(const PointConfig& cfg, const std::vector<double>& nodes) {
    const int m = cfg.m();
    const int n = static_cast<int>(nodes.size());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(Eigen::Index(m) * n, Eigen::Index(m) * n);
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    K(Eigen::Index(i - 1) * n + a, Eigen::Index(j - 1) * n + b) =
                        kernel_B_tilde(cfg, i, nodes[a], j, nodes[b]);
    return K;
}

} // namespace af
