#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "airyfred/types.hpp"

namespace af::ident {

/// Atomic measure: the identities are measure-agnostic and atoms permit
/// exact enumeration of the right-hand sides.
struct DiscreteMeasure {
    std::vector<Complex> atoms;
    std::vector<double> weights;

    DiscreteMeasure(std::vector<Complex> a, std::vector<double> w);
    int size() const { return static_cast<int>(atoms.size()); }
};

/// Disjoint blocks I_1..I_q covering {1..n} (1-based indices).
struct BlockPartition {
    std::vector<std::vector<int>> blocks;
    int n;

    BlockPartition(std::vector<std::vector<int>> b, int n_total);
    bool same_block(int i, int j) const;
};

using Fn = std::function<Complex(Complex)>;

struct AndreiefPair {
    Complex lhs;      // det of the Gram matrix of integrals
    Complex rhs;      // block-product form, enumerated over atoms^n
    Complex rhs_phi;  // phi-masked determinant form, enumerated likewise
};

/// Both sides of the generalized Andreief identity over an atomic measure.
/// n <= 7 (the right side enumerates |atoms|^n assignments).
AndreiefPair andreief_pair(const BlockPartition& partition, const std::vector<Fn>& A,
                           const std::vector<Fn>& B, const DiscreteMeasure& mu);

/// Exact integer path: A/B given by value tables at the atoms, weights
/// integer. Verifies lhs * prod |I_k|! == sum over assignments exactly
/// (int128 Bareiss determinants).
struct AndreiefExact {
    bool equal;
    // both sides scaled by prod |I_k|! so they are integers
    __int128 lhs_scaled;
    __int128 rhs_scaled;
};
AndreiefExact andreief_exact(const BlockPartition& partition,
                             const std::vector<std::vector<long long>>& A_vals,
                             const std::vector<std::vector<long long>>& B_vals,
                             const std::vector<long long>& weights);

struct AntisymmetryReport {
    double part_i_error;   // |lhs - rhs| / scale for the determinant expansion
    double part_ii_error;  // max |G(w') + G(swapped)| / scale over adjacent swaps
    bool passed(double tol = 1e-12) const {
        return part_i_error <= tol && part_ii_error <= tol;
    }
};

/// Lemma-style antisymmetrization checks over a discrete measure with seeded
/// random antisymmetric F, polynomials p_i, and bivariate q. n <= 5, k <= n.
AntisymmetryReport antisymmetry_check(int n, int k, const DiscreteMeasure& mu, std::uint64_t seed);

struct OkounkovPair {
    double integral;     // two-sided quadrature of e^{xz} Ai(z+a) Ai(z+b)
    double closed_form;  // exp(x^3/12 - (a+b)x/2 - (a-b)^2/(4x)) / (2 sqrt(pi x))
};

/// The Gaussian-Airy integral identity; x > 0.
OkounkovPair okounkov_pair(double x, double a, double b);

/// The two-sided integral alone (also used to cross-check the B kernel).
double airy_bilinear_integral(double x, double a, double b);

} // namespace af::ident
