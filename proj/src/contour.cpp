#include "airyfred/contour.hpp"

#include <cmath>
#include <sstream>

#include "airyfred/gauss.hpp"

namespace af {

void ContourSpec::validate() const {
    if (!(truncation > 0.0))
        throw std::invalid_argument("ContourSpec: truncation must be positive");
    if (nodes_per_segment < 2)
        throw std::invalid_argument("ContourSpec: nodes_per_segment must be >= 2");
    if (kind == Kind::ray_pair) {
        const bool left = angle > M_PI / 2.0 && angle < M_PI;
        const bool right = angle > 0.0 && angle < M_PI / 2.0;
        if (!left && !right)
            throw std::invalid_argument("ContourSpec: ray angle must avoid the imaginary axis");
    }
}

QuadratureContour build_contour(const ContourSpec& spec) {
    spec.validate();
    QuadratureContour qc;
    qc.spec = spec;
    const Complex two_pi_i(0.0, 2.0 * M_PI);
    const Complex norm = spec.measure_over_2pi_i ? 1.0 / two_pi_i : Complex(1.0);

    switch (spec.kind) {
    case ContourSpec::Kind::ray_pair: {
        const int n = spec.nodes_per_segment;
        const GaussLegendre g = gauss_legendre_on(n, 0.0, spec.truncation);
        const Complex dir_up = std::polar(1.0, spec.angle);
        const Complex dir_dn = std::polar(1.0, -spec.angle);
        qc.points.reserve(2 * n);
        qc.weights.reserve(2 * n);
        // lower ray first, traversed towards the vertex (r decreasing)
        for (int k = n - 1; k >= 0; --k) {
            qc.points.push_back(spec.vertex + g.nodes[k] * dir_dn);
            qc.weights.push_back(-g.weights[k] * dir_dn * norm);
        }
        for (int k = 0; k < n; ++k) {
            qc.points.push_back(spec.vertex + g.nodes[k] * dir_up);
            qc.weights.push_back(g.weights[k] * dir_up * norm);
        }
        break;
    }
    case ContourSpec::Kind::vertical_line: {
        const int n = spec.nodes_per_segment;
        const GaussLegendre g = gauss_legendre_on(n, -spec.truncation, spec.truncation);
        for (int k = 0; k < n; ++k) {
            qc.points.push_back(spec.vertex + Complex(0.0, g.nodes[k]));
            qc.weights.push_back(Complex(0.0, g.weights[k]) * norm);
        }
        break;
    }
    case ContourSpec::Kind::circle: {
        const int n = spec.nodes_per_segment;
        const double rho = spec.truncation;
        for (int k = 0; k < n; ++k) {
            const double phi = 2.0 * M_PI * k / n;
            const Complex e = std::polar(1.0, phi);
            qc.points.push_back(spec.vertex + rho * e);
            // trapezoid on the parametrization: d(zeta) = i*rho*e^{i phi} dphi
            qc.weights.push_back(Complex(0.0, 1.0) * rho * e * (2.0 * M_PI / n) * norm);
        }
        break;
    }
    }
    return qc;
}

Complex integrate(const QuadratureContour& qc, const std::function<Complex(Complex)>& f) {
    Complex acc{};
    for (int k = 0; k < qc.size(); ++k) {
        const Complex v = f(qc.points[k]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream os;
            os << "integrate: non-finite integrand at node " << k << " = (" << qc.points[k].real()
               << ", " << qc.points[k].imag() << ")";
            throw NumericsError(os.str());
        }
        acc += qc.weights[k] * v;
    }
    return acc;
}

RefinedIntegral integrate_refined(const ContourSpec& spec, const std::function<Complex(Complex)>& f) {
    const Complex coarse = integrate(build_contour(spec), f);
    ContourSpec fine = spec;
    fine.nodes_per_segment *= 2;
    const Complex value = integrate(build_contour(fine), f);
    return {value, std::abs(value - coarse)};
}

namespace {

// One planned ray-pair: truncation extended until the integrand envelope is
// gone, node count budgeted from the total oscillation phase over the region
// where the envelope is within e^-55 of its hump (Gauss-Legendre resolves
// such integrands once the node count passes ~0.7x the phase in radians).
struct RayPlan {
    double trunc;
    int nodes;
    double hump; // max log-envelope, for vertex selection
};

RayPlan plan_ray(double t0, int base_nodes, int scale, const std::function<double(double)>& log_env,
                 const std::function<double(double)>& dphase) {
    double t = t0;
    while (t < 64.0 && !(log_env(t) <= -46.0 && log_env(t + 2.0) < log_env(t))) t += 1.0;
    const int grid = 1200;
    double hump = -1e300;
    for (int i = 0; i <= grid; ++i) hump = std::max(hump, log_env(t * i / grid));
    double phase = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double r = t * (i + 0.5) / grid;
        if (log_env(r) > hump - 55.0) phase += dphase(r) * (t / grid);
    }
    return {t, scale * std::max(base_nodes, int(0.72 * phase) + 24), hump};
}

// Envelope/phase of f_i (sgn = -1) or 1/f_i (sgn = +1), worst case over i.
RayPlan plan_ray_f(double t0, int base_nodes, int scale, Complex vertex, double angle, double sgn,
                   const PointConfig& cfg) {
    const Complex dir = std::polar(1.0, angle);
    auto env = [=, &cfg](double r) {
        const Complex u = vertex + r * dir;
        double worst = -1e300;
        for (int i = 0; i < cfg.m(); ++i) {
            const Complex e = sgn * (-u * u * u / 3.0 + cfg.alpha[i] * u * u + cfg.beta[i] * u);
            worst = std::max(worst, e.real());
        }
        return worst;
    };
    auto dph = [=, &cfg](double r) {
        const Complex u = vertex + r * dir;
        double worst = 0.0;
        for (int i = 0; i < cfg.m(); ++i)
            worst = std::max(worst, std::abs(u * u - 2.0 * cfg.alpha[i] * u - cfg.beta[i]));
        return worst;
    };
    return plan_ray(t0, base_nodes, scale, env, dph);
}

// Envelope/phase of F_i (sgn = -1) or 1/F_i (sgn = +1): quadratic decay,
// slower than the cubic f_i decay.
RayPlan plan_ray_F(double t0, int base_nodes, int scale, Complex vertex, double angle, double sgn,
                   double dalpha, double dbeta) {
    const Complex dir = std::polar(1.0, angle);
    auto env = [=](double r) {
        const Complex u = vertex + r * dir;
        return (sgn * (dalpha * u * u + dbeta * u)).real();
    };
    auto dph = [=](double r) {
        const Complex u = vertex + r * dir;
        return std::abs(2.0 * dalpha * u + dbeta);
    };
    return plan_ray(t0, base_nodes, scale, env, dph);
}

QuadratureContour make_ray(Complex vertex, double angle, const RayPlan& plan) {
    ContourSpec s;
    s.kind = ContourSpec::Kind::ray_pair;
    s.vertex = vertex;
    s.angle = angle;
    s.truncation = plan.trunc;
    s.nodes_per_segment = plan.nodes;
    return build_contour(s);
}

} // namespace

ContourFamily::ContourFamily(const PointConfig& cfg, const QuadSettings& qs, int node_scale)
    : m_(cfg.m()), qs_(qs) {
    if (node_scale < 1) throw std::invalid_argument("ContourFamily: node_scale must be >= 1");
    const double aL = 2.0 * M_PI / 3.0;
    const double aR = M_PI / 5.0;
    const int nb = qs.nodes_per_ray;
    const int sc = node_scale;

    left_main_ = make_ray({-1.0, 0.0}, aL,
                          plan_ray_f(qs.left_truncation, nb, sc, {-1.0, 0.0}, aL, +1.0, cfg));

    // Left family per the figure ordering: in strictly left of the main
    // contour, out strictly right (apices -0.6*i and -1+0.4*i). A level-i
    // contour carries F_i, so its plan follows the quadratic envelope.
    double left_out_max = -1.0;
    for (int i = 2; i <= m_; ++i) {
        const double da = cfg.alpha[i - 1] - cfg.alpha[i - 2];
        const double db = cfg.beta[i - 1] - cfg.beta[i - 2];
        const double vin = -0.6 * i;
        const double vout = -1.0 + 0.4 * i;
        left_out_max = std::max(left_out_max, vout);
        left_in_.push_back(make_ray({vin, 0.0}, aL,
                                    plan_ray_F(qs.left_truncation, nb, sc, {vin, 0.0}, aL, +1.0, da, db)));
        left_out_.push_back(make_ray({vout, 0.0}, aL,
                                     plan_ray_F(qs.left_truncation, nb, sc, {vout, 0.0}, aL, +1.0, da, db)));
    }

    // The main right contour may sit anywhere in the right half plane; pick
    // the apex that minimizes the 1/f_i hump along the ray (for beta < 0 the
    // hump reaches e^14 from apex 1.0 but stays near e^5 hugging the axis,
    // which decides whether the kernel values survive cancellation).
    const double lo = std::max(0.05, left_out_max + 0.15);
    if (lo >= 0.95)
        throw std::invalid_argument("ContourFamily: contour families cannot be separated for this m");
    const double c_min = lo + 0.15;
    double c_best = std::max(c_min, 1.0), hump_best = 1e300;
    for (double c = c_min; c <= 3.0; c += 0.05) {
        const RayPlan p = plan_ray_f(qs.right_truncation, nb, sc, {c, 0.0}, aR, -1.0, cfg);
        if (p.hump < hump_best - 1e-12) {
            hump_best = p.hump;
            c_best = c;
        }
    }
    right_main_ = make_ray({c_best, 0.0}, aR,
                           plan_ray_f(qs.right_truncation, nb, sc, {c_best, 0.0}, aR, -1.0, cfg));

    // Right in/out families around the chosen apex; out-contours spread
    // between the left-out apices and the main right contour so the families
    // never cross for any admissible m.
    for (int i = 2; i <= m_; ++i) {
        const double da = cfg.alpha[i - 1] - cfg.alpha[i - 2];
        const double db = cfg.beta[i - 1] - cfg.beta[i - 2];
        const double vin = c_best + 0.3 * (i - 1);
        const double vout = lo + (c_best - lo) * double(m_ + 1 - i) / double(m_ + 1);
        right_in_.push_back(make_ray({vin, 0.0}, aR,
                                     plan_ray_F(qs.right_truncation, nb, sc, {vin, 0.0}, aR, -1.0, da, db)));
        right_out_.push_back(make_ray({vout, 0.0}, aR,
                                      plan_ray_F(qs.right_truncation, nb, sc, {vout, 0.0}, aR, -1.0, da, db)));
    }

    // iR line for the B kernel: Gaussian decay exp(-dalpha_min * y^2).
    double dalpha_min = 1e300;
    for (int i = 1; i < m_; ++i) dalpha_min = std::min(dalpha_min, cfg.alpha[i] - cfg.alpha[i - 1]);
    double tLine = qs.line_truncation;
    if (m_ > 1) tLine = std::max(tLine, std::sqrt(48.0 / dalpha_min));
    ContourSpec line;
    line.kind = ContourSpec::Kind::vertical_line;
    line.vertex = {0.0, 0.0};
    line.truncation = tLine;
    line.nodes_per_segment = qs.line_nodes * sc;
    imag_axis_ = build_contour(line);
}

const QuadratureContour& ContourFamily::left_in(int i) const {
    if (i == 1) return left_main_;
    if (i < 2 || i > m_) throw std::out_of_range("ContourFamily::left_in index");
    return left_in_[i - 2];
}

const QuadratureContour& ContourFamily::left_out(int i) const {
    if (i == 1) return left_main_;
    if (i < 2 || i > m_) throw std::out_of_range("ContourFamily::left_out index");
    return left_out_[i - 2];
}

const QuadratureContour& ContourFamily::right_in(int i) const {
    if (i == 1) return right_main_;
    if (i < 2 || i > m_) throw std::out_of_range("ContourFamily::right_in index");
    return right_in_[i - 2];
}

const QuadratureContour& ContourFamily::right_out(int i) const {
    if (i == 1) return right_main_;
    if (i < 2 || i > m_) throw std::out_of_range("ContourFamily::right_out index");
    return right_out_[i - 2];
}

QuadratureContour ContourFamily::z_circle(double radius) const {
    if (!(radius > 0.0 && radius < 1.0))
        throw std::invalid_argument("z_circle: radius must lie in (0,1)");
    ContourSpec s;
    s.kind = ContourSpec::Kind::circle;
    s.vertex = {0.0, 0.0};
    s.truncation = radius;
    s.nodes_per_segment = qs_.circle_nodes;
    s.orientation = ContourSpec::Orientation::counterclockwise;
    return build_contour(s);
}

bool ContourFamily::right_of(const QuadratureContour& c, Complex p) {
    if (c.spec.kind != ContourSpec::Kind::ray_pair)
        throw std::invalid_argument("right_of: expects a ray-pair contour");
    const double a = c.spec.vertex.real();
    const double cot = std::cos(c.spec.angle) / std::sin(c.spec.angle);
    return p.real() > a + std::abs(p.imag() - c.spec.vertex.imag()) * cot;
}

} // namespace af
