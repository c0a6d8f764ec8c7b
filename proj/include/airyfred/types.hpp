#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace af {

using Complex = std::complex<double>;

/// Thrown when a quadrature or determinant refinement fails to reach the
/// requested accuracy. Maps to CLI exit code 3.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on numerically singular pivots and non-finite intermediate values.
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

/// The m spatial points (alpha_i, beta_i) of the joint distribution.
/// alpha must be strictly increasing; equal alphas are rejected because the
/// Gaussian B kernel is singular there.
struct PointConfig {
    std::vector<double> alpha;
    std::vector<double> beta;

    PointConfig(std::vector<double> a, std::vector<double> b)
        : alpha(std::move(a)), beta(std::move(b)) {
        if (alpha.empty() || alpha.size() != beta.size())
            throw std::invalid_argument("PointConfig: need equal, nonzero numbers of alpha and beta");
        for (std::size_t i = 1; i < alpha.size(); ++i)
            if (!(alpha[i - 1] < alpha[i]))
                throw std::invalid_argument("alpha must be strictly increasing");
    }

    int m() const { return static_cast<int>(alpha.size()); }

    void check_index(int i) const {
        if (i < 1 || i > m()) throw std::out_of_range("point index out of range");
    }
};

/// Quadrature parameters. Everything here is an artifact decision, not taken
/// from any formula; all of it is overridable from the CLI and AF_* env vars.
struct QuadSettings {
    int nodes_per_ray = 48;       // Gauss-Legendre nodes per ray of a ray-pair contour
    int line_nodes = 64;          // vertical-line contours (auto-densified with oscillation)
    int circle_nodes = 32;        // z-circles
    double left_truncation = 8.0; // arc length cutoff, cubic-decay contours
    double right_truncation = 12.0;
    double line_truncation = 12.0;
    double z_radius = 0.5;        // |z| for the circle integrals, inside (0,1)
    double lambda_max = 18.0;     // half-line Nystrom cutoff
    int halfline_nodes = 64;      // Nystrom nodes per point index
    int gamma_nodes = 96;         // half-line kernel integrals (A/B kernels, L1 factor)
    int liu_nodes_per_ray = 24;   // reduced default inside the D_n machinery
};

/// An evaluatable block kernel (i, s, j, t) -> value on {1..m} x domain.
/// This is the unit the half-line Fredholm routine consumes; contour-side
/// kernels are assembled directly on contour nodes instead.
struct BlockKernel {
    enum class Domain { half_line, left_contour };
    std::function<Complex(int, double, int, double)> evaluate;
    Domain domain = Domain::half_line;
};

/// Value of a Fredholm determinant (or partial sum) together with its
/// refinement history. error_estimate is |last - previous| over the history.
struct FredholmResult {
    Complex value{};
    std::vector<std::pair<double, Complex>> history; // (resolution or order, value)
    double error_estimate = 0.0;

    void push(double key, Complex v) {
        if (!history.empty()) error_estimate = std::abs(v - history.back().second);
        history.emplace_back(key, v);
        value = v;
    }
};

} // namespace af
