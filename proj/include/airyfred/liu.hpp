#pragma once

#include <vector>

#include "airyfred/types.hpp"

namespace af::liu {

/// Term label n = (n_1, ..., n_m) of the D-expansion. k_i = n_i - n_{i+1}
/// with n_{m+1} = 0; "admissible" means n_1 >= ... >= n_m (the only indices
/// with a nonzero z-integral).
struct MultiIndex {
    explicit MultiIndex(std::vector<int> n);

    const std::vector<int>& n() const { return n_; }
    int m() const { return static_cast<int>(n_.size()); }
    int total() const;
    std::vector<int> k() const;
    bool admissible() const;

private:
    std::vector<int> n_;
};

/// Cauchy determinant det[1/(w_i - wt_j)] via the closed product form,
/// sign (-1)^{n(n-1)/2}. Empty vectors give 1.
Complex cauchy_det(const std::vector<Complex>& w, const std::vector<Complex>& wt);

/// The same determinant expanded row by row (test cross-check).
Complex cauchy_det_direct(const std::vector<Complex>& w, const std::vector<Complex>& wt);

enum class Stage { lemma22i, lemma22ii, lemma23 };

/// D_n at a given z (the full in/out expansion, 2^{sum n_i} single-contour
/// terms per side). Cost guards: sum n_i <= 4, m <= 3, |z_i| in (0,1).
Complex eval_D_n(const PointConfig& cfg, const MultiIndex& n, const std::vector<Complex>& z,
                 const QuadSettings& qs);

/// hat{D}_n: the z-integrals of D_n over circles |z_i| = z_radius.
Complex hat_D_direct(const PointConfig& cfg, const MultiIndex& n, const QuadSettings& qs);

/// The three successive simplifications. lemma22ii and lemma23 return an
/// exact 0 on non-admissible n (hat_D_direct integrates honestly instead;
/// the pair is the test).
Complex hat_D_stage(const PointConfig& cfg, const MultiIndex& n, const QuadSettings& qs,
                    Stage stage);

/// Partial sums of sum_n hat{D}_n / prod(n_i!)^2 over cutoffs 0..n_total_max
/// (<= 3), using the lemma23 form for admissible n.
FredholmResult airy_cdf_via_sum(const PointConfig& cfg, int n_total_max, const QuadSettings& qs);

} // namespace af::liu
