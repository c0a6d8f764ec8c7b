#include "airyfred/airy.hpp"

#include <cmath>

#include "airyfred/fredholm.hpp"
#include "airyfred/gauss.hpp"

namespace af {

namespace {

// Minimal double-double arithmetic for the Maclaurin series. The series
// itself cancels catastrophically past |x| ~ 5 in plain doubles; carrying
// ~32 digits keeps it exact-to-double out to the asymptotic switchover.
struct dd {
    double hi, lo;
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    const dd t = two_sum(s.hi, s.lo);
    return t;
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, p.lo);
}

inline dd dd_mul_d(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return two_sum(p.hi, p.lo);
}

inline dd dd_div_d(dd a, double b) {
    const double q1 = a.hi / b;
    const dd r = two_prod(q1, b);
    const double q2 = ((a.hi - r.hi) - r.lo + a.lo) / b;
    return two_sum(q1, q2);
}

// Ai(0) and -Ai'(0) to double-double precision.
constexpr dd kC1{0.3550280538878172, 2.05233632436212e-17};
constexpr dd kC2{0.2588194037928068, -2.522243111610832e-17};

double airy_series(double x) {
    // Ai(x) = c1*f(x) - c2*g(x), term ratios x^3/((3k)(3k-1)) and
    // x^3/((3k+1)(3k)).
    const dd x3 = dd_mul_d(two_prod(x, x), x);
    dd f{1.0, 0.0}, g{x, 0.0};
    dd tf{1.0, 0.0}, tg{x, 0.0};
    for (int k = 1; k < 400; ++k) {
        tf = dd_div_d(dd_mul(tf, x3), double(3 * k) * double(3 * k - 1));
        tg = dd_div_d(dd_mul(tg, x3), double(3 * k + 1) * double(3 * k));
        f = dd_add(f, tf);
        g = dd_add(g, tg);
        if (std::abs(tf.hi) < 1e-40 && std::abs(tg.hi) < 1e-40) break;
    }
    const dd ai = dd_add(dd_mul(kC1, f), dd_mul_d(dd_mul(kC2, g), -1.0));
    return ai.hi + ai.lo;
}

// u_k / u_{k-1} for the asymptotic series.
inline double u_ratio(int k) {
    return (3.0 * k - 0.5) * (3.0 * k - 1.5) * (3.0 * k - 2.5) / (54.0 * k * (k - 0.5));
}

double airy_asymptotic_pos(double x) {
    const double xi = 2.0 / 3.0 * x * std::sqrt(x);
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        const double next = term * u_ratio(k) / xi;
        if (std::abs(next) >= std::abs(term)) break; // past the optimal truncation
        term = next;
        sum += (k % 2 ? -term : term);
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return std::exp(-xi) / (2.0 * std::sqrt(M_PI) * std::pow(x, 0.25)) * sum;
}

double airy_asymptotic_neg(double x) {
    const double t = -x;
    const double xi = 2.0 / 3.0 * t * std::sqrt(t);
    // Even and odd u_k sub-series with alternating signs.
    double u = 1.0;
    double even = 1.0, odd = 0.0;
    double prev = 1.0;
    for (int k = 1; k <= 60; ++k) {
        u *= u_ratio(k) / xi;
        if (std::abs(u) >= std::abs(prev)) break;
        prev = u;
        const int half = k / 2;
        const double signed_u = (half % 2 ? -u : u);
        if (k % 2)
            odd += signed_u;
        else
            even += signed_u;
        if (std::abs(u) < 1e-18) break;
    }
    const double phase = xi - M_PI / 4.0;
    return (std::cos(phase) * even + std::sin(phase) * odd) /
           (std::sqrt(M_PI) * std::pow(t, 0.25));
}

} // namespace

AiryValue airy_ai_value(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("airy_ai: x must be finite");
    if (std::abs(x) <= 9.0) return {x, airy_series(x), AiryValue::Method::series};
    if (x > 0) return {x, airy_asymptotic_pos(x), AiryValue::Method::asymptotic};
    return {x, airy_asymptotic_neg(x), AiryValue::Method::asymptotic};
}

double airy_ai(double x) { return airy_ai_value(x).ai; }

Complex airy_ai_via_contour(double x, const QuadratureContour& qc) {
    if (qc.spec.kind != ContourSpec::Kind::ray_pair || !(qc.spec.angle > M_PI / 2.0))
        throw std::invalid_argument("airy_ai_via_contour: needs a left ray-pair contour");
    auto f = [x](Complex u) { return std::exp(-u * u * u / 3.0 + x * u); };
    return integrate(qc, f);
}

Complex airy_ai_via_contour(double x) {
    ContourSpec spec;
    spec.kind = ContourSpec::Kind::ray_pair;
    // For x < 0 the saddles sit at +-i sqrt(-x); a vertex at sqrt(-x/3) puts
    // the rays through them, keeping the integrand hump at e^0 and the
    // cancellation floor at machine precision. For x >= 0 any left-opening
    // vertex is well conditioned.
    spec.vertex = {x < 0.0 ? std::sqrt(-x / 3.0) : -1.0, 0.0};
    spec.angle = 2.0 * M_PI / 3.0;
    spec.truncation = 10.0;
    spec.nodes_per_segment = 128;
    // Extend the cutoff until exp(Re(-u^3/3 + x u)) is negligible there.
    const Complex dir = std::polar(1.0, spec.angle);
    auto env = [&](double r) {
        const Complex u = spec.vertex + r * dir;
        return (-u * u * u / 3.0 + x * u).real();
    };
    while (spec.truncation < 40.0 && env(spec.truncation) > -46.0) spec.truncation += 2.0;

    auto f = [x](Complex u) { return std::exp(-u * u * u / 3.0 + x * u); };
    const RefinedIntegral r = integrate_refined(spec, f);
    if (r.error_estimate > 1e-8)
        throw ConvergenceError("airy_ai_via_contour: refinement estimate " +
                               std::to_string(r.error_estimate) + " exceeds 1e-8");
    return r.value;
}

FredholmResult f_gue_det(double s, int n_nodes) {
    // Airy kernel on (s, inf) in offset coordinates: K(a,b) =
    // int_0^zmax Ai(s+a+z)Ai(s+b+z) dz, assembled as P diag(w) P^T.
    const double lambda_max = std::max(18.0, 20.0 - s);
    const double zmax = std::max(4.0, 19.0 - s);
    auto assemble = [&](const std::vector<double>& nodes) {
        const int n = static_cast<int>(nodes.size());
        const GaussLegendre gz = gauss_legendre_on(96, 0.0, zmax);
        Eigen::MatrixXd P(n, 96);
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < 96; ++c) P(a, c) = airy_ai(s + nodes[a] + gz.nodes[c]);
        Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(gz.weights.data(), 96);
        Eigen::MatrixXd K = P * w.asDiagonal() * P.transpose();
        return Eigen::MatrixXcd(K.cast<Complex>());
    };
    return fredholm_det_halfline_assembled(assemble, 1, lambda_max, n_nodes);
}

double f_gue(double s) { return f_gue_det(s).value.real(); }

} // namespace af
