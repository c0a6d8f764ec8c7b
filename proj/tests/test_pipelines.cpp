#include <doctest.h>

#include <cmath>

#include "airyfred/airy.hpp"
#include "airyfred/pipelines.hpp"

using namespace af;

TEST_SUITE_BEGIN("pipelines");

TEST_CASE("method names round-trip") {
    for (CdfMethod m : {CdfMethod::ext_airy, CdfMethod::contour_k, CdfMethod::b_minus_a,
                        CdfMethod::liu_sum})
        CHECK(parse_method(method_name(m)) == m);
    CHECK(!parse_method("nope").has_value());
}

TEST_CASE("one-point law through every pipeline") {
    PointConfig cfg({0.0}, {-1.0});
    QuadSettings qs;
    const double ref = f_gue(-1.0);
    const double bma = joint_cdf(cfg, CdfMethod::b_minus_a, qs).value.real();
    const double ext = joint_cdf(cfg, CdfMethod::ext_airy, qs).value.real();
    const double k = joint_cdf(cfg, CdfMethod::contour_k, qs).value.real();
    const FredholmResult liu = joint_cdf(cfg, CdfMethod::liu_sum, qs);
    CHECK(std::abs(bma - ref) < 1e-7);
    CHECK(std::abs(ext - ref) < 1e-7);
    CHECK(std::abs(k - ref) < 1e-7);
    CHECK(std::abs(liu.value.real() - ref) < std::max(1e-5, 2.0 * liu.error_estimate));
}

TEST_CASE("two-point pipelines agree") {
    PointConfig cfg({-0.25, 0.75}, {0.0, -0.5});
    QuadSettings qs;
    const double k = joint_cdf(cfg, CdfMethod::contour_k, qs).value.real();
    const double bma = joint_cdf(cfg, CdfMethod::b_minus_a, qs).value.real();
    const double ext = joint_cdf(cfg, CdfMethod::ext_airy, qs).value.real();
    CHECK(std::abs(k - bma) < 1e-6);
    CHECK(std::abs(bma - ext) < 1e-6);
}

TEST_CASE("joint values are probabilities, monotone in each beta") {
    QuadSettings qs;
    double prev = -1.0;
    for (double b2 : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        PointConfig cfg({0.0, 1.0}, {-0.5, b2});
        const double v = joint_cdf(cfg, CdfMethod::b_minus_a, qs).value.real();
        CHECK(v >= -1e-8);
        CHECK(v <= 1.0 + 1e-8);
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
    prev = -1.0;
    for (double b1 : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        PointConfig cfg({0.0, 1.0}, {b1, 0.5});
        const double v = joint_cdf(cfg, CdfMethod::b_minus_a, qs).value.real();
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
}

TEST_CASE("marginalization: beta_2 -> +8 recovers the one-point value") {
    QuadSettings qs;
    PointConfig cfg({0.0, 1.0}, {-1.0, 8.0});
    const double joint = joint_cdf(cfg, CdfMethod::b_minus_a, qs).value.real();
    CHECK(std::abs(joint - f_gue(-1.0)) < 1e-5);
    // and the other coordinate
    PointConfig cfg2({0.0, 1.0}, {8.0, -1.0});
    const double joint2 = joint_cdf(cfg2, CdfMethod::contour_k, qs).value.real();
    CHECK(std::abs(joint2 - f_gue(-1.0 + 1.0)) < 1e-5);
}

TEST_CASE("joint is bounded by the marginal") {
    QuadSettings qs;
    PointConfig cfg({0.0, 1.0}, {-1.0, 0.0});
    const double joint = joint_cdf(cfg, CdfMethod::b_minus_a, qs).value.real();
    CHECK(joint <= f_gue(-1.0) + 1e-7);
    CHECK(joint <= f_gue(1.0) + 1e-7);
}

TEST_SUITE_END();
