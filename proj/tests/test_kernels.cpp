#include <doctest.h>

#include <cmath>
#include <random>

#include "airyfred/airy.hpp"
#include "airyfred/fredholm.hpp"
#include "airyfred/gauss.hpp"
#include "airyfred/kernels.hpp"

using namespace af;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("eval_f by direct substitution") {
    PointConfig cfg0({0.0}, {0.0});
    CHECK(std::abs(eval_f(cfg0, 1, {0.0, 0.0}) - 1.0) < 1e-15);
    CHECK(std::abs(eval_f(cfg0, 1, {1.0, 0.0}) - std::exp(-1.0 / 3.0)) < 1e-15);

    PointConfig cfg1({1.0}, {2.0});
    // -(i)^3/3 + i^2 + 2i = -1 + (7/3) i
    const Complex expect = std::exp(Complex(-1.0, 7.0 / 3.0));
    CHECK(std::abs(eval_f(cfg1, 1, {0.0, 1.0}) - expect) < 1e-15);
    CHECK_THROWS_AS(eval_f(cfg1, 2, {0.0, 0.0}), std::out_of_range);
}

TEST_CASE("eval_F branches and telescoping") {
    PointConfig cfg({-0.7, 0.1, 0.9}, {0.3, -0.2, 0.5});
    CHECK(std::abs(eval_F(cfg, 2, {0.0, 0.0}) - 1.0) < 1e-15);
    CHECK(std::abs(eval_F(cfg, 3, {0.0, 0.0}) - 1.0) < 1e-15);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.1, 2.1);
    for (int t = 0; t < 20; ++t) {
        const Complex w(u(rng), u(rng));
        CHECK(std::abs(eval_F(cfg, 1, w) - eval_f(cfg, 1, w)) <= 1e-13 * std::abs(eval_f(cfg, 1, w)));
        Complex prod(1.0);
        for (int i = 1; i <= 3; ++i) prod *= eval_F(cfg, i, w);
        CHECK(std::abs(prod - eval_f(cfg, 3, w)) <= 1e-13 * std::abs(eval_f(cfg, 3, w)));
    }
}

TEST_CASE("h_1 closed form") {
    PointConfig cfg({0.0}, {0.0});
    QuadSettings qs;
    const Complex v = eval_h(cfg, 1, {-1.0, 0.0}, {1.0, 0.0}, qs);
    CHECK(std::abs(v - Complex(-std::exp(1.0 / 3.0) / 2.0)) < 1e-14);
}

TEST_CASE("h_2: node doubling and an independent dense trapezoid oracle") {
    PointConfig cfg({-0.5, 0.5}, {0.0, -0.5});
    QuadSettings qs;
    ContourFamily fam(cfg, qs);
    const Complex u{-1.0, 0.4}, v{1.0, -0.3};
    const Complex h = eval_h(cfg, 2, u, v, fam);

    ContourFamily fine(cfg, qs, 2);
    CHECK(std::abs(h - eval_h(cfg, 2, u, v, fine)) < 1e-10);

    // dense trapezoid on the same inner ray pair (arc-length parametrization)
    const Complex apex = fam.left_in(2).spec.vertex;
    const double T = fam.left_in(2).spec.truncation;
    const Complex dir_up = std::polar(1.0, 2.0 * M_PI / 3.0);
    const Complex dir_dn = std::conj(dir_up);
    const int N = 60000;
    Complex acc{};
    for (int k = 0; k < N; ++k) {
        const double r = T * (k + 0.5) / N;
        const Complex up = apex + r * dir_up;
        const Complex dn = apex + r * dir_dn;
        acc += eval_F(cfg, 2, up) / ((u - up) * (up - v)) * dir_up * (T / N);
        acc -= eval_F(cfg, 2, dn) / ((u - dn) * (dn - v)) * dir_dn * (T / N);
    }
    acc *= eval_F(cfg, 1, u) / Complex(0.0, 2.0 * M_PI);
    CHECK(std::abs(h - acc) < 1e-8);
}

TEST_CASE("h ordering validation") {
    PointConfig cfg({-0.5, 0.5}, {0.0, 0.0});
    QuadSettings qs;
    ContourFamily fam(cfg, qs);
    // u left of the inner contour (apex -1.2): rejected
    CHECK_THROWS_AS(eval_h(cfg, 2, {-4.0, 0.0}, {1.0, 0.0}, fam), std::invalid_argument);
    // v not in the right half plane: rejected
    CHECK_THROWS_AS(eval_h(cfg, 2, {-1.0, 0.0}, {-1.0, 0.0}, fam), std::invalid_argument);
}

TEST_CASE("kernel_K: refinement stability at m=1") {
    PointConfig cfg({0.0}, {0.0});
    QuadSettings qs;
    ContourFamily fam(cfg, qs);
    ContourFamily fine(cfg, qs, 2);
    const Complex z{-1.0, 0.0}, u{-1.0, 0.0};
    const Complex k1 = kernel_K(cfg, 1, z, 1, u, fam);
    const Complex k2 = kernel_K(cfg, 1, z, 1, u, fine);
    CHECK(std::isfinite(k1.real()));
    CHECK(std::abs(k1 - k2) < 1e-10);
}

TEST_CASE("kernel_K factorizes through the half-line (K = L1 L2)") {
    PointConfig cfg({0.3}, {-0.4});
    QuadSettings qs;
    ContourFamily fam(cfg, qs);
    // points near the apex where the kernel is O(1)
    const int mid = fam.left_main().size() / 2;
    const Complex z = fam.left_main().points[mid - 3];
    const Complex u = fam.left_main().points[mid + 5];
    const Complex K = kernel_K(cfg, 1, z, 1, u, fam);
    const GaussLegendre g = gauss_legendre_on(128, 0.0, 30.0);
    Complex acc{};
    for (int c = 0; c < 128; ++c)
        acc += g.weights[c] * kernel_L1(cfg, 1, z, g.nodes[c], fam) * std::exp(g.nodes[c] * u);
    CHECK(std::abs(K - acc) < 1e-8 * std::max(1.0, std::abs(K)));
}

TEST_CASE("kernel_K decays super-exponentially along the contour") {
    PointConfig cfg({0.0}, {0.0});
    QuadSettings qs;
    ContourFamily fam(cfg, qs);
    const Complex u{-1.0, 0.0};
    const Complex base = kernel_K(cfg, 1, {-1.0, 0.0}, 1, u, fam);
    // z on Gamma_L with |Im z| = 6
    const double r = 6.0 / std::sin(2.0 * M_PI / 3.0);
    const Complex z = Complex(-1.0, 0.0) + r * std::polar(1.0, 2.0 * M_PI / 3.0);
    const Complex far = kernel_K(cfg, 1, z, 1, u, fam);
    CHECK(std::abs(far) < 1e-20 * std::abs(base));
}

TEST_CASE("kernel_L at m=1: conjugate symmetry and the Airy-kernel reduction") {
    const double alpha = 0.5, beta = -0.3, s = beta + alpha * alpha;
    PointConfig cfg({alpha}, {beta});
    QuadSettings qs;
    ContourFamily fam(cfg, qs);
    LProduct L(cfg, fam);
    const GaussLegendre g = gauss_legendre_on(256, 0.0, 24.0);
    for (double l : {0.4, 1.1}) {
        for (double t : {0.7, 2.0}) {
            const Complex v = L(l, t);
            CHECK(std::abs(v.imag()) < 1e-11);
            double acc = 0.0;
            for (int c = 0; c < 256; ++c)
                acc += g.weights[c] * airy_ai(l + s + g.nodes[c]) * airy_ai(t + s + g.nodes[c]);
            const double ref = -std::exp(alpha * (l - t)) * acc;
            CHECK(std::abs(v.real() - ref) < 1e-9);
        }
    }
}

TEST_CASE("kernel_L at m=2 equals the A1/B/A2 decomposition") {
    PointConfig cfg({-0.5, 0.5}, {0.0, -0.5});
    QuadSettings qs;
    ContourFamily fam(cfg, qs);
    LProduct L(cfg, fam);
    const int G = 96;
    const GaussLegendre g = gauss_legendre_on(G, 0.0, 24.0);
    Eigen::MatrixXcd B(G, G);
    for (int c1 = 0; c1 < G; ++c1)
        for (int c2 = 0; c2 < G; ++c2)
            B(c1, c2) = eval_B_line(cfg, 1, 2, g.nodes[c2] - g.nodes[c1], qs);
    for (double l : {0.5, 1.5}) {
        for (double t : {0.8, 2.5}) {
            Complex dec{};
            for (int i = 1; i <= 2; ++i) {
                Complex acc{};
                for (int c = 0; c < G; ++c)
                    acc += g.weights[c] * eval_A1(cfg, l, i, g.nodes[c], fam) *
                           eval_A2(cfg, i, g.nodes[c], t, fam);
                dec -= acc;
            }
            Complex acc2{};
            for (int c1 = 0; c1 < G; ++c1) {
                const Complex a1 = eval_A1(cfg, l, 1, g.nodes[c1], fam);
                for (int c2 = 0; c2 < G; ++c2)
                    acc2 += g.weights[c1] * g.weights[c2] * a1 * B(c1, c2) *
                            eval_A2(cfg, 2, g.nodes[c2], t, fam);
            }
            dec += acc2;
            CHECK(std::abs(L(l, t) - dec) < 1e-8);
        }
    }
}

TEST_CASE("eval_B_line equals the Gaussian closed form") {
    PointConfig cfg({-0.5, 0.5}, {0.0, -0.5});
    QuadSettings qs;
    for (double d : {-6.0, -1.0, 0.0, 2.0, 7.0}) {
        const double da = 1.0, db = -0.5;
        const double closed =
            std::exp(-(d + db) * (d + db) / (4.0 * da)) / (2.0 * std::sqrt(M_PI * da));
        CHECK(std::abs(eval_B_line(cfg, 1, 2, d, qs).real() - closed) < 1e-12);
        CHECK(std::abs(eval_B_line(cfg, 1, 2, d, qs).imag()) < 1e-12);
    }
    CHECK(eval_B_line(cfg, 2, 1, 0.5, qs) == Complex(0.0));
    CHECK(eval_B_line(cfg, 2, 2, 0.5, qs) == Complex(0.0));
}

TEST_CASE("kernel_A_tilde: classical diagonal, symmetry, decay") {
    PointConfig cfg({0.0}, {0.0});
    QuadSettings qs;
    // int_0^inf Ai(g)^2 dg = Ai'(0)^2, with Ai'(0) from finite differences
    const double h = 1e-5;
    const double aip0 =
        (airy_ai(-2 * h) - 8 * airy_ai(-h) + 8 * airy_ai(h) - airy_ai(2 * h)) / (12 * h);
    const double diag = kernel_A_tilde(cfg, 1, 0.0, 1, 0.0, qs);
    CHECK(diag == doctest::Approx(aip0 * aip0).epsilon(1e-8));

    PointConfig cfg2({-0.5, 0.5}, {0.2, -0.1});
    CHECK(kernel_A_tilde(cfg2, 2, 0.7, 2, 1.3, qs) ==
          doctest::Approx(kernel_A_tilde(cfg2, 2, 1.3, 2, 0.7, qs)).epsilon(1e-13));
    CHECK(std::abs(kernel_A_tilde(cfg, 1, 12.0, 1, 0.0, qs)) < 1e-10);
}

TEST_CASE("kernel_B_tilde closed form and the Airy-integral identity") {
    PointConfig cfg({0.0, 1.0}, {0.0, 0.0});
    QuadSettings qs;
    CHECK(kernel_B_tilde(cfg, 2, 0.0, 1, 0.0) == 0.0);
    CHECK(kernel_B_tilde(cfg, 1, 0.0, 2, 0.0) ==
          doctest::Approx(std::exp(-2.0 / 3.0) / (2.0 * std::sqrt(M_PI))).epsilon(1e-13));

    // B~ = int_R e^{-(a_i-a_j)g} Ai(l+b_i+a_i^2+g) Ai(t+b_j+a_j^2+g) dg
    PointConfig cfg2({-0.4, 0.6}, {0.3, -0.2});
    const GaussLegendre g = gauss_legendre_on(6000, -60.0, 30.0);
    for (double l : {0.0, 0.5, 1.0})
        for (double t : {0.0, 0.5, 1.0}) {
            const double lhs = kernel_B_tilde(cfg2, 1, l, 2, t);
            const double a = l + 0.3 + 0.16, b = t - 0.2 + 0.36;
            double acc = 0.0;
            for (int c = 0; c < 6000; ++c)
                acc += g.weights[c] * std::exp(g.nodes[c]) * airy_ai(g.nodes[c] + a) *
                       airy_ai(g.nodes[c] + b);
            CHECK(std::abs(lhs - acc) < 1e-9);
        }
}

TEST_CASE("kernel_ext_airy branch structure") {
    PointConfig cfg({-0.4, 0.6}, {0.3, -0.2});
    QuadSettings qs;
    CHECK(kernel_ext_airy(cfg, 2, 0.5, 1, 0.8, qs) ==
          doctest::Approx(kernel_A_tilde(cfg, 2, 0.5, 1, 0.8, qs)).epsilon(1e-14));
    const double lhs = kernel_ext_airy(cfg, 1, 0.5, 2, 0.8, qs);
    const double rhs = kernel_A_tilde(cfg, 1, 0.5, 2, 0.8, qs) - kernel_B_tilde(cfg, 1, 0.5, 2, 0.8);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK_THROWS_AS(kernel_ext_airy(cfg, 1, -0.1, 2, 0.8, qs), std::invalid_argument);
}

TEST_CASE("assembled A~ blocks match the per-entry operation") {
    PointConfig cfg({-0.4, 0.6}, {0.3, -0.2});
    QuadSettings qs;
    std::vector<double> nodes{0.3, 1.1, 2.7, 6.0};
    const Eigen::MatrixXd A = a_tilde_matrix(cfg, nodes, qs);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    CHECK(std::abs(A(i * 4 + a, j * 4 + b) -
                                   kernel_A_tilde(cfg, i + 1, nodes[a], j + 1, nodes[b], qs)) < 1e-10);
}

TEST_CASE("conjugation invariance of the half-line determinant") {
    PointConfig cfg({-0.5, 0.5}, {0.0, -0.5});
    QuadSettings qs;
    auto base = [&](const std::vector<double>& nodes) {
        return Eigen::MatrixXcd(
            (a_tilde_matrix(cfg, nodes, qs) - b_tilde_matrix(cfg, nodes)).cast<Complex>());
    };
    auto conjugated = [&](const std::vector<double>& nodes) {
        Eigen::MatrixXcd K = base(nodes);
        const int nn = static_cast<int>(nodes.size());
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int a = 0; a < nn; ++a)
                    for (int b = 0; b < nn; ++b)
                        K(i * nn + a, j * nn + b) *= std::exp((nodes[a] - nodes[b]) / 2.0);
        return K;
    };
    const FredholmResult r0 = fredholm_det_halfline_assembled(base, 2, 18.0, 48);
    const FredholmResult r1 = fredholm_det_halfline_assembled(conjugated, 2, 18.0, 48);
    CHECK(std::abs(r0.value - r1.value) < 1e-10);
}

TEST_CASE("strict upper-triangular multiplication invariance") {
    // det(I + B~ - A~) = det((I+B~)(I - (sum_{k<m} (-B~)^k) A~)) since B~^m = 0
    PointConfig cfg({-0.5, 0.5}, {0.0, -0.5});
    QuadSettings qs;
    const int n = 48;
    const GaussLegendre g = gauss_legendre_on(n, 0.0, 18.0);
    const Eigen::MatrixXd A = a_tilde_matrix(cfg, g.nodes, qs);
    const Eigen::MatrixXd B = b_tilde_matrix(cfg, g.nodes);
    Eigen::VectorXd w(2 * n);
    for (int i = 0; i < 2; ++i)
        for (int a = 0; a < n; ++a) w[i * n + a] = g.weights[a];
    const Eigen::MatrixXd Aw = A * w.asDiagonal(), Bw = B * w.asDiagonal();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    CHECK((Bw * Bw).norm() == 0.0); // strictly block-upper-triangular at m = 2
    const double d1 = det_lu(Eigen::MatrixXcd((I + Bw - Aw).cast<Complex>())).real();
    const double d2 =
        det_lu(Eigen::MatrixXcd(((I + Bw) * (I - (I - Bw) * Aw)).cast<Complex>())).real();
    CHECK(std::abs(d1 - d2) < 1e-9 * std::max(1.0, std::abs(d1)));
}

TEST_SUITE_END();
