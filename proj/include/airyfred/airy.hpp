#pragma once

#include "airyfred/contour.hpp"
#include "airyfred/types.hpp"

namespace af {

struct AiryValue {
    enum class Method { series, asymptotic, contour };
    double x;
    double ai;
    Method method;
};

/// Ai(x) from the Maclaurin series (compensated double-double accumulation)
/// for |x| <= 9 and the standard asymptotic expansions beyond. Relative error
/// ~1e-13 where Ai is representable.
double airy_ai(double x);
AiryValue airy_ai_value(double x);

/// Ai(x) as the left-contour integral of exp(-u^3/3 + x*u) du / (2*pi*i).
/// Imaginary part stays ~1e-12 because nodes come in conjugate pairs. Throws
/// ConvergenceError when the refinement estimate exceeds 1e-8.
Complex airy_ai_via_contour(double x);
Complex airy_ai_via_contour(double x, const QuadratureContour& qc);

/// The GUE Tracy-Widom distribution, as the Fredholm determinant of the
/// classical Airy kernel int_0^inf Ai(x+z)Ai(y+z) dz on (s, inf).
double f_gue(double s);
FredholmResult f_gue_det(double s, int n_nodes = 64);

} // namespace af
