#pragma once

#include <functional>
#include <vector>

#include "airyfred/types.hpp"

namespace af {

/// Description of a discretized complex contour.
///
/// ray_pair: two rays from `vertex` at angles ±`angle`, truncated at arc
///   length `truncation`, oriented from the lower ray towards the upper ray.
///   Left-family contours use angle in (pi/2, pi) (cubic decay of f_1),
///   right-family contours use angle in (0, pi/2).
/// vertical_line: vertex ± i*truncation, oriented upward.
/// circle: center `vertex`, radius `truncation`, counterclockwise trapezoid.
struct ContourSpec {
    enum class Kind { ray_pair, vertical_line, circle };
    enum class Orientation { upward, counterclockwise };

    Kind kind = Kind::ray_pair;
    Complex vertex{};
    double angle = 2.0 * M_PI / 3.0; // half-opening angle; unused for line/circle
    double truncation = 8.0;         // cutoff per ray / half-height / radius
    int nodes_per_segment = 48;
    Orientation orientation = Orientation::upward;
    bool measure_over_2pi_i = true;  // fold 1/(2*pi*i) into the weights

    void validate() const;
};

/// A contour realized as quadrature nodes and complex weights. Weights carry
/// the direction factor d(zeta) and, when requested, the 1/(2*pi*i) measure.
struct QuadratureContour {
    std::vector<Complex> points;
    std::vector<Complex> weights;
    ContourSpec spec;

    int size() const { return static_cast<int>(points.size()); }
};

QuadratureContour build_contour(const ContourSpec& spec);

/// Sum of weights * f(points). Throws NumericsError naming the offending node
/// if f is non-finite anywhere.
Complex integrate(const QuadratureContour& qc, const std::function<Complex(Complex)>& f);

/// Integrate at the spec's node count and at double the count; the error
/// estimate is |I(2n) - I(n)|.
struct RefinedIntegral {
    Complex value;
    double error_estimate;
};
RefinedIntegral integrate_refined(const ContourSpec& spec, const std::function<Complex(Complex)>& f);

/// The full contour family for an m-point configuration:
/// left rays at angle 2pi/3 (main at -1, in-family at -0.6*i left of it,
/// out-family right of it), right rays at angle pi/5, the imaginary axis,
/// and z-circles. Truncations start at the configured defaults and grow until
/// the f_i / 1/f_i envelopes at the cutoff are below e^-46 for this config.
class ContourFamily {
public:
    ContourFamily(const PointConfig& cfg, const QuadSettings& qs, int node_scale = 1);

    const QuadratureContour& left_main() const { return left_main_; }
    const QuadratureContour& right_main() const { return right_main_; }
    const QuadratureContour& left_in(int i) const;   // 2 <= i <= m (i=1 -> left_main)
    const QuadratureContour& left_out(int i) const;  // 2 <= i <= m
    const QuadratureContour& right_in(int i) const;
    const QuadratureContour& right_out(int i) const;
    const QuadratureContour& imag_axis() const { return imag_axis_; }
    QuadratureContour z_circle(double radius) const;

    int m() const { return m_; }
    const QuadSettings& settings() const { return qs_; }

    /// True iff `p` lies strictly to the right of the given left-family ray
    /// pair (same-angle rays: constant horizontal separation).
    static bool right_of(const QuadratureContour& c, Complex p);

private:
    int m_;
    QuadSettings qs_;
    QuadratureContour left_main_, right_main_, imag_axis_;
    std::vector<QuadratureContour> left_in_, left_out_, right_in_, right_out_; // index 0 <-> i=2
};

} // namespace af
