#include "airyfred/identities.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "airyfred/airy.hpp"
#include "airyfred/gauss.hpp"

namespace af::ident {

DiscreteMeasure::DiscreteMeasure(std::vector<Complex> a, std::vector<double> w)
    : atoms(std::move(a)), weights(std::move(w)) {
    if (atoms.empty() || atoms.size() != weights.size())
        throw std::invalid_argument("DiscreteMeasure: need matching nonempty atoms and weights");
    for (double x : weights)
        if (!(x > 0.0)) throw std::invalid_argument("DiscreteMeasure: weights must be positive");
}

BlockPartition::BlockPartition(std::vector<std::vector<int>> b, int n_total)
    : blocks(std::move(b)), n(n_total) {
    std::vector<char> seen(n + 1, 0);
    int count = 0;
    for (const auto& blk : blocks)
        for (int i : blk) {
            if (i < 1 || i > n || seen[i])
                throw std::invalid_argument("BlockPartition: blocks must disjointly cover 1..n");
            seen[i] = 1;
            ++count;
        }
    if (count != n) throw std::invalid_argument("BlockPartition: blocks must cover 1..n");
}

bool BlockPartition::same_block(int i, int j) const {
    for (const auto& blk : blocks) {
        const bool hi = std::find(blk.begin(), blk.end(), i) != blk.end();
        const bool hj = std::find(blk.begin(), blk.end(), j) != blk.end();
        if (hi || hj) return hi && hj;
    }
    return false;
}

namespace {

Complex det_small(const Eigen::MatrixXcd& M) {
    return M.rows() == 0 ? Complex(1.0) : Complex(M.determinant());
}

// odometer over assignments (x_1..x_n) in atoms^n
template <typename Body>
void for_each_assignment(int n, int n_atoms, Body&& body) {
    std::vector<int> idx(n, 0);
    while (true) {
        body(idx);
        int p = 0;
        while (p < n && ++idx[p] == n_atoms) idx[p++] = 0;
        if (p == n) break;
    }
}

} // namespace

AndreiefPair andreief_pair(const BlockPartition& partition, const std::vector<Fn>& A,
                           const std::vector<Fn>& B, const DiscreteMeasure& mu) {
    const int n = partition.n;
    if (n > 7) throw std::invalid_argument("andreief_pair: cost guard requires n <= 7");
    if (static_cast<int>(A.size()) != n || static_cast<int>(B.size()) != n)
        throw std::invalid_argument("andreief_pair: need n functions on each side");

    // lhs: det of the matrix of integrals
    Eigen::MatrixXcd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex acc{};
            for (int x = 0; x < mu.size(); ++x)
                acc += A[i](mu.atoms[x]) * B[j](mu.atoms[x]) * mu.weights[x];
            G(i, j) = acc;
        }
    AndreiefPair out;
    out.lhs = det_small(G);

    double blocks_factorial = 1.0;
    for (const auto& blk : partition.blocks) blocks_factorial *= std::tgamma(blk.size() + 1.0);

    Complex rhs{}, rhs_phi{};
    for_each_assignment(n, mu.size(), [&](const std::vector<int>& idx) {
        Eigen::MatrixXcd MA(n, n), MB(n, n);
        double wprod = 1.0;
        for (int j = 0; j < n; ++j) wprod *= mu.weights[idx[j]];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                MA(i, j) = A[i](mu.atoms[idx[j]]);
                MB(i, j) = B[i](mu.atoms[idx[j]]);
            }
        const Complex detA = det_small(MA);

        Complex blockprod(1.0);
        for (const auto& blk : partition.blocks) {
            const int s = static_cast<int>(blk.size());
            Eigen::MatrixXcd Mb(s, s);
            for (int r = 0; r < s; ++r)
                for (int c = 0; c < s; ++c) Mb(r, c) = MB(blk[r] - 1, blk[c] - 1);
            blockprod *= det_small(Mb);
        }
        rhs += detA * blockprod * wprod;

        Eigen::MatrixXcd Mphi = MB;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!partition.same_block(i + 1, j + 1)) Mphi(i, j) = Complex(0.0);
        rhs_phi += detA * det_small(Mphi) * wprod;
    });
    out.rhs = rhs / blocks_factorial;
    out.rhs_phi = rhs_phi / blocks_factorial;
    return out;
}

namespace {

__int128 bareiss_det(std::vector<std::vector<__int128>> M) {
    const int n = static_cast<int>(M.size());
    if (n == 0) return 1;
    __int128 sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M[k][k] == 0) {
            int p = k + 1;
            while (p < n && M[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(M[k], M[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

} // namespace

AndreiefExact andreief_exact(const BlockPartition& partition,
                             const std::vector<std::vector<long long>>& A_vals,
                             const std::vector<std::vector<long long>>& B_vals,
                             const std::vector<long long>& weights) {
    const int n = partition.n;
    const int na = static_cast<int>(weights.size());
    if (n > 7) throw std::invalid_argument("andreief_exact: cost guard requires n <= 7");

    __int128 factorials = 1;
    for (const auto& blk : partition.blocks)
        for (std::size_t t = 1; t <= blk.size(); ++t) factorials *= __int128(t);

    std::vector<std::vector<__int128>> G(n, std::vector<__int128>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int x = 0; x < na; ++x)
                G[i][j] += __int128(A_vals[i][x]) * B_vals[j][x] * weights[x];
    const __int128 lhs_scaled = bareiss_det(G) * factorials;

    __int128 rhs_scaled = 0;
    for_each_assignment(n, na, [&](const std::vector<int>& idx) {
        __int128 wprod = 1;
        for (int j = 0; j < n; ++j) wprod *= weights[idx[j]];
        std::vector<std::vector<__int128>> MA(n, std::vector<__int128>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) MA[i][j] = A_vals[i][idx[j]];
        __int128 term = bareiss_det(MA);
        for (const auto& blk : partition.blocks) {
            const int s = static_cast<int>(blk.size());
            std::vector<std::vector<__int128>> Mb(s, std::vector<__int128>(s));
            for (int r = 0; r < s; ++r)
                for (int c = 0; c < s; ++c) Mb[r][c] = B_vals[blk[r] - 1][idx[blk[c] - 1]];
            term *= bareiss_det(Mb);
        }
        rhs_scaled += term * wprod;
    });
    return {lhs_scaled == rhs_scaled, lhs_scaled, rhs_scaled};
}

AntisymmetryReport antisymmetry_check(int n, int k, const DiscreteMeasure& mu,
                                      std::uint64_t seed) {
    if (n < 1 || n > 5) throw std::invalid_argument("antisymmetry_check: cost guard requires n <= 5");
    if (k < 1 || k > n) throw std::invalid_argument("antisymmetry_check: need 1 <= k <= n");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);

    // F = det[ptilde_i(w_j)] is antisymmetric by construction.
    auto rand_poly = [&](int deg) {
        std::vector<double> c(deg + 1);
        for (double& v : c) v = coeff(rng);
        return [c](Complex w) {
            Complex acc{};
            for (int d = static_cast<int>(c.size()) - 1; d >= 0; --d) acc = acc * w + c[d];
            return acc;
        };
    };
    std::vector<Fn> ptilde, p;
    for (int i = 0; i < n; ++i) ptilde.push_back(rand_poly(i + 1));
    for (int i = 0; i < n; ++i) p.push_back(rand_poly(2));
    auto F = [&](const std::vector<int>& idx) {
        Eigen::MatrixXcd M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = ptilde[i](mu.atoms[idx[j]]);
        return Complex(M.determinant());
    };

    // part (i): integral of F * det[p_i(w_j)] equals n! * integral of F * prod p_i(w_i)
    Complex lhs{}, rhs{};
    double scale = 0.0;
    for_each_assignment(n, mu.size(), [&](const std::vector<int>& idx) {
        double wprod = 1.0;
        for (int j = 0; j < n; ++j) wprod *= mu.weights[idx[j]];
        const Complex Fv = F(idx);
        Eigen::MatrixXcd M(n, n);
        Complex diag(1.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) M(i, j) = p[i](mu.atoms[idx[j]]);
            diag *= p[i](mu.atoms[idx[i]]);
        }
        lhs += Fv * Complex(M.determinant()) * wprod;
        rhs += Fv * diag * wprod;
        scale += std::abs(Fv) * wprod;
    });
    rhs *= std::tgamma(n + 1.0);
    AntisymmetryReport rep;
    rep.part_i_error = std::abs(lhs - rhs) / std::max(1.0, scale);

    // part (ii): G(w') antisymmetric in w'_1..w'_k under adjacent swaps
    std::vector<double> qc(9);
    for (double& v : qc) v = coeff(rng);
    auto q = [&](Complex w, Complex wp) {
        Complex acc{};
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b) acc += qc[3 * a + b] * std::pow(w, a) * std::pow(wp, b);
        return acc;
    };
    std::vector<Complex> wp(k);
    for (int j = 0; j < k; ++j) wp[j] = Complex(coeff(rng), coeff(rng));
    auto G = [&](const std::vector<Complex>& wprime) {
        Complex acc{};
        for_each_assignment(n, mu.size(), [&](const std::vector<int>& idx) {
            double wprod = 1.0;
            for (int j = 0; j < n; ++j) wprod *= mu.weights[idx[j]];
            Complex qprod(1.0);
            for (int j = 0; j < k; ++j) qprod *= q(mu.atoms[idx[j]], wprime[j]);
            acc += F(idx) * qprod * wprod;
        });
        return acc;
    };
    const Complex base = G(wp);
    double worst = 0.0;
    for (int j = 0; j + 1 < k; ++j) {
        std::vector<Complex> swapped = wp;
        std::swap(swapped[j], swapped[j + 1]);
        worst = std::max(worst, std::abs(base + G(swapped)));
    }
    if (k == 1) worst = 0.0; // nothing to swap
    rep.part_ii_error = worst / std::max(1.0, std::abs(base));
    return rep;
}

double airy_bilinear_integral(double x, double a, double b) {
    if (!(x > 0.0)) throw std::invalid_argument("airy_bilinear_integral: x must be positive");
    // right cutoff: both Airy factors decay; left cutoff: e^{xz} beats the
    // oscillation envelope |z|^{-1/2}
    auto right_env = [&](double z) {
        auto dec = [](double t) { return t > 0.0 ? -(2.0 / 3.0) * t * std::sqrt(t) : 0.0; };
        return x * z + dec(z + a) + dec(z + b);
    };
    double zr = std::max(2.0, 18.0 - std::min(a, b));
    while (zr < 200.0 && right_env(zr) > -43.0) zr += 2.0;
    double zl = -(43.0 / x) - std::abs(a) - std::abs(b) - 2.0;

    // panelized Gauss-Legendre, panels shrinking with the Airy oscillation
    double acc = 0.0, z0 = zl;
    while (z0 < zr) {
        const double freq = 1.0 + 2.0 * std::sqrt(std::max(0.0, -(z0 + std::min(a, b))));
        const double h = std::min(zr - z0, std::max(0.25, 10.0 / freq));
        const GaussLegendre g = gauss_legendre_on(16, z0, z0 + h);
        for (int i = 0; i < 16; ++i)
            acc += g.weights[i] * std::exp(x * g.nodes[i]) * airy_ai(g.nodes[i] + a) *
                   airy_ai(g.nodes[i] + b);
        z0 += h;
    }
    return acc;
}

OkounkovPair okounkov_pair(double x, double a, double b) {
    if (!(x > 0.0)) throw std::invalid_argument("okounkov_pair: x must be positive");
    OkounkovPair out;
    out.closed_form = std::exp(x * x * x / 12.0 - 0.5 * (a + b) * x - (a - b) * (a - b) / (4.0 * x)) /
                      (2.0 * std::sqrt(M_PI * x));
    out.integral = airy_bilinear_integral(x, a, b);
    return out;
}

} // namespace af::ident
