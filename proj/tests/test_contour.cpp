#include <doctest.h>

#include <cmath>

#include "airyfred/contour.hpp"
#include "airyfred/gauss.hpp"

using namespace af;

TEST_SUITE_BEGIN("contour");

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    // 48-point rule is exact through degree 95
    const GaussLegendre g = gauss_legendre_on(48, 0.0, 2.0);
    double acc = 0.0;
    for (int i = 0; i < 48; ++i) acc += g.weights[i] * std::pow(g.nodes[i], 7);
    CHECK(acc == doctest::Approx(std::pow(2.0, 8) / 8.0).epsilon(1e-14));
    double total = 0.0;
    for (double w : g.weights) total += w;
    CHECK(total == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("circle rule: residue of 1/z and vanishing of entire functions") {
    ContourSpec spec;
    spec.kind = ContourSpec::Kind::circle;
    spec.vertex = {0.0, 0.0};
    spec.truncation = 0.5;
    spec.nodes_per_segment = 32;
    const QuadratureContour qc = build_contour(spec);

    const Complex one_over_z = integrate(qc, [](Complex z) { return 1.0 / z; });
    CHECK(std::abs(one_over_z - 1.0) < 1e-14);

    const Complex constant = integrate(qc, [](Complex) { return Complex(1.0); });
    CHECK(std::abs(constant) < 1e-14);
}

TEST_CASE("circle trapezoid is exact for z^k up to the aliasing order") {
    ContourSpec spec;
    spec.kind = ContourSpec::Kind::circle;
    spec.vertex = {0.0, 0.0};
    spec.truncation = 0.75;
    spec.nodes_per_segment = 32;
    const QuadratureContour qc = build_contour(spec);
    for (int k = -15; k <= 15; ++k) {
        const Complex v = integrate(qc, [k](Complex z) { return std::pow(z, k); });
        const Complex expect = (k == -1) ? Complex(1.0) : Complex(0.0);
        CAPTURE(k);
        CHECK(std::abs(v - expect) < 1e-13);
    }
}

TEST_CASE("ray pair reproduces Ai(0) from the cubic-exponential integral") {
    ContourSpec spec;
    spec.kind = ContourSpec::Kind::ray_pair;
    spec.vertex = {-1.0, 0.0};
    spec.angle = 2.0 * M_PI / 3.0;
    spec.truncation = 8.0;
    spec.nodes_per_segment = 48;
    const QuadratureContour qc = build_contour(spec);
    const Complex v = integrate(qc, [](Complex u) { return std::exp(-u * u * u / 3.0); });
    CHECK(std::abs(v - Complex(0.35502805388781724)) < 1e-10);
    CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("vertical line: conjugate symmetry kills the imaginary part") {
    ContourSpec spec;
    spec.kind = ContourSpec::Kind::vertical_line;
    spec.vertex = {0.0, 0.0};
    spec.truncation = 10.0;
    spec.nodes_per_segment = 64;
    const QuadratureContour qc = build_contour(spec);
    const Complex v = integrate(qc, [](Complex w) { return std::exp(-w * w); });
    CHECK(std::abs(v.imag()) < 1e-12 * std::max(1.0, std::abs(v.real())));
}

TEST_CASE("refinement estimate collapses for super-exponential decay") {
    ContourSpec spec;
    spec.kind = ContourSpec::Kind::ray_pair;
    spec.vertex = {-1.0, 0.0};
    spec.angle = 2.0 * M_PI / 3.0;
    spec.truncation = 8.0;
    spec.nodes_per_segment = 48;
    const RefinedIntegral r =
        integrate_refined(spec, [](Complex u) { return std::exp(-u * u * u / 3.0); });
    CHECK(r.error_estimate < 1e-12);
}

TEST_CASE("orientation reversal negates the integral") {
    ContourSpec spec;
    spec.kind = ContourSpec::Kind::vertical_line;
    spec.vertex = {0.5, 0.0};
    spec.truncation = 6.0;
    spec.nodes_per_segment = 48;
    const QuadratureContour up = build_contour(spec);
    QuadratureContour down = up;
    for (auto& w : down.weights) w = -w;
    auto f = [](Complex w) { return std::exp(-w * w) * w; };
    CHECK(std::abs(integrate(up, f) + integrate(down, f)) < 1e-15);
}

TEST_CASE("spec validation") {
    ContourSpec spec;
    spec.truncation = -1.0;
    CHECK_THROWS_AS(build_contour(spec), std::invalid_argument);
    spec.truncation = 4.0;
    spec.nodes_per_segment = 1;
    CHECK_THROWS_AS(build_contour(spec), std::invalid_argument);
    spec.nodes_per_segment = 16;
    spec.angle = M_PI / 2.0; // on the axis: rejected
    CHECK_THROWS_AS(build_contour(spec), std::invalid_argument);
}

TEST_CASE("non-finite integrand reported with the node") {
    ContourSpec spec;
    spec.kind = ContourSpec::Kind::circle;
    spec.vertex = {0.0, 0.0};
    spec.truncation = 1.0;
    spec.nodes_per_segment = 8;
    const QuadratureContour qc = build_contour(spec);
    CHECK_THROWS_AS(integrate(qc, [](Complex z) { return 1.0 / (z - z); }), NumericsError);
}

TEST_CASE("contour family ordering and accessors") {
    PointConfig cfg({-0.5, 0.5}, {0.0, 0.0});
    QuadSettings qs;
    ContourFamily fam(cfg, qs);
    CHECK(fam.left_in(2).spec.vertex.real() < fam.left_main().spec.vertex.real());
    CHECK(fam.left_out(2).spec.vertex.real() > fam.left_main().spec.vertex.real());
    CHECK(fam.right_out(2).spec.vertex.real() < fam.right_main().spec.vertex.real());
    CHECK(fam.right_in(2).spec.vertex.real() > fam.right_main().spec.vertex.real());
    CHECK(fam.right_out(2).spec.vertex.real() > fam.left_out(2).spec.vertex.real());
    CHECK_THROWS_AS(fam.left_in(3), std::out_of_range);
    // points on the main contour are strictly right of the in-family
    for (const Complex& p : fam.left_main().points)
        CHECK(ContourFamily::right_of(fam.left_in(2), p));
}

TEST_SUITE_END();
