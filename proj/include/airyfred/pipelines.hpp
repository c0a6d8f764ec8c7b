#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "airyfred/types.hpp"

namespace af {

/// The four independent evaluation routes for the joint CDF
/// P(A(alpha_1) <= beta_1, ..., A(alpha_m) <= beta_m).
enum class CdfMethod {
    ext_airy,   // det(I - chi K_ext chi), half-line Nystrom
    contour_k,  // det(I + K) on the left contour
    b_minus_a,  // det(I + B~ - A~), half-line Nystrom
    liu_sum,    // truncated sum over hat{D}_n (carries its tail bound)
};

std::optional<CdfMethod> parse_method(std::string_view name);
std::string method_name(CdfMethod method);

FredholmResult joint_cdf(const PointConfig& cfg, CdfMethod method, const QuadSettings& qs,
                         int liu_cutoff = 3);

} // namespace af
