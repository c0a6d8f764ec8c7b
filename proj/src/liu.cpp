#include "airyfred/liu.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "airyfred/contour.hpp"
#include "airyfred/kernels.hpp"

namespace af::liu {

MultiIndex::MultiIndex(std::vector<int> n) : n_(std::move(n)) {
    if (n_.empty()) throw std::invalid_argument("MultiIndex: empty index");
    for (int v : n_)
        if (v < 0) throw std::invalid_argument("MultiIndex: entries must be nonnegative");
}

int MultiIndex::total() const { return std::accumulate(n_.begin(), n_.end(), 0); }

std::vector<int> MultiIndex::k() const {
    std::vector<int> out(n_.size());
    for (std::size_t i = 0; i < n_.size(); ++i)
        out[i] = n_[i] - (i + 1 < n_.size() ? n_[i + 1] : 0);
    return out;
}

bool MultiIndex::admissible() const {
    for (std::size_t i = 1; i < n_.size(); ++i)
        if (n_[i] > n_[i - 1]) return false;
    return true;
}

Complex cauchy_det(const std::vector<Complex>& w, const std::vector<Complex>& wt) {
    if (w.size() != wt.size()) throw std::invalid_argument("cauchy_det: dimension mismatch");
    const int n = static_cast<int>(w.size());
    if (n == 0) return Complex(1.0);
    Complex num(1.0), den(1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j > i) num *= (w[j] - w[i]) * (wt[j] - wt[i]);
            const Complex d = w[j] - wt[i];
            if (d == Complex(0.0)) throw std::invalid_argument("cauchy_det: coincident entries");
            den *= d;
        }
    const double sign = (n * (n - 1) / 2) % 2 ? -1.0 : 1.0;
    return sign * num / den;
}

Complex cauchy_det_direct(const std::vector<Complex>& w, const std::vector<Complex>& wt) {
    const int n = static_cast<int>(w.size());
    if (w.size() != wt.size()) throw std::invalid_argument("cauchy_det: dimension mismatch");
    if (n == 0) return Complex(1.0);
    Eigen::MatrixXcd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = 1.0 / (w[i] - wt[j]);
    return M.determinant();
}

namespace {

// ---------------------------------------------------------------------------
// Contraction engine. An integrand is a product of determinants over
// "strands" (integration variables with their contour and folded weights).
// Every strand appears in exactly one determinant's rows and one's columns,
// so each Leibniz choice turns the multi-contour integral into disjoint
// cycles contracted as matrix traces over the quadrature nodes. This is the
// tensor-product quadrature value, exactly, just reassociated.
// ---------------------------------------------------------------------------

struct Strand {
    const QuadratureContour* contour = nullptr;
    Eigen::VectorXcd weight; // quadrature weight x vertex factor
};

struct Block {
    std::vector<int> rows, cols;                // strand ids
    const Eigen::MatrixXcd* entry = nullptr;    // optional table (h_i); Cauchy otherwise
    int entry_id = -1;                          // cache key for the table
};

class Network {
public:
    std::vector<Strand> strands;
    std::vector<Block> blocks;

    int add_strand(const QuadratureContour* c, Eigen::VectorXcd w) {
        strands.push_back({c, std::move(w)});
        return static_cast<int>(strands.size()) - 1;
    }

    Complex contract();

private:
    struct EdgeKey {
        int row, col, entry;
        bool operator<(const EdgeKey& o) const {
            return std::tie(row, col, entry) < std::tie(o.row, o.col, o.entry);
        }
    };
    std::map<EdgeKey, Eigen::MatrixXcd> edge_cache_;
    std::map<std::vector<int>, Complex> cycle_cache_;

    const Eigen::MatrixXcd& edge_matrix(int r, int c, const Block& b);
    Complex cycle_value(const std::vector<std::pair<int, const Eigen::MatrixXcd*>>& cyc);
};

const Eigen::MatrixXcd& Network::edge_matrix(int r, int c, const Block& b) {
    const EdgeKey key{r, c, b.entry ? b.entry_id : -1};
    auto it = edge_cache_.find(key);
    if (it != edge_cache_.end()) return it->second;
    const auto& x = *strands[r].contour;
    const auto& y = *strands[c].contour;
    Eigen::MatrixXcd E(x.size(), y.size());
    if (b.entry) {
        E = *b.entry;
    } else {
        for (int a = 0; a < x.size(); ++a)
            for (int bb = 0; bb < y.size(); ++bb) E(a, bb) = 1.0 / (x.points[a] - y.points[bb]);
    }
    return edge_cache_.emplace(key, std::move(E)).first->second;
}

Complex Network::cycle_value(const std::vector<std::pair<int, const Eigen::MatrixXcd*>>& cyc) {
    const int L = static_cast<int>(cyc.size());
    if (L == 2) {
        const auto& d1 = strands[cyc[0].first].weight;
        const auto& d2 = strands[cyc[1].first].weight;
        const auto& E1 = *cyc[0].second;
        const auto& E2 = *cyc[1].second;
        return ((d1.asDiagonal() * E1 * d2.asDiagonal()).cwiseProduct(E2.transpose())).sum();
    }
    Eigen::MatrixXcd M =
        strands[cyc[0].first].weight.asDiagonal() * (*cyc[0].second);
    for (int i = 1; i < L; ++i)
        M = M * (strands[cyc[i].first].weight.asDiagonal() * (*cyc[i].second)).eval();
    return M.trace();
}

int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

Complex Network::contract() {
    const int nstr = static_cast<int>(strands.size());
    if (nstr == 0) return Complex(1.0);

    // degree checks: one row slot and one column slot per strand
    std::vector<int> row_of(nstr, -1), col_of(nstr, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].rows.size() != blocks[b].cols.size())
            throw std::logic_error("contract: non-square determinant block");
        for (int s : blocks[b].rows) {
            if (row_of[s] != -1) throw std::logic_error("contract: strand in two row slots");
            row_of[s] = static_cast<int>(b);
        }
        for (int s : blocks[b].cols) {
            if (col_of[s] != -1) throw std::logic_error("contract: strand in two col slots");
            col_of[s] = static_cast<int>(b);
        }
    }
    for (int s = 0; s < nstr; ++s)
        if (row_of[s] < 0 || col_of[s] < 0)
            throw std::logic_error("contract: strand missing a row or column slot");

    // odometer over the per-block permutations
    std::vector<std::vector<int>> perms(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        perms[b].resize(blocks[b].rows.size());
        std::iota(perms[b].begin(), perms[b].end(), 0);
    }

    Complex total{};
    std::vector<int> target(nstr);        // strand -> strand via its row edge
    std::vector<const Eigen::MatrixXcd*> emat(nstr);
    while (true) {
        int sign = 1;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            sign *= permutation_sign(perms[b]);
            for (std::size_t r = 0; r < perms[b].size(); ++r) {
                const int rs = blocks[b].rows[r];
                const int cs = blocks[b].cols[perms[b][r]];
                target[rs] = cs;
                emat[rs] = &edge_matrix(rs, cs, blocks[b]);
            }
        }
        // decompose into cycles; evaluate with memoization on the canonical key
        Complex term(1.0);
        std::vector<char> seen(nstr, 0);
        for (int s = 0; s < nstr && term != Complex(0.0); ++s) {
            if (seen[s]) continue;
            std::vector<std::pair<int, const Eigen::MatrixXcd*>> cyc;
            std::vector<int> key;
            int start = s, best = s;
            for (int t = s; !seen[t]; t = target[t]) { // find smallest id for canonical rotation
                seen[t] = 1;
                best = std::min(best, t);
            }
            for (int t = best;;) {
                cyc.emplace_back(t, emat[t]);
                key.push_back(t);
                t = target[t];
                if (t == best) break;
            }
            (void)start;
            auto it = cycle_cache_.find(key);
            if (it == cycle_cache_.end())
                it = cycle_cache_.emplace(key, cycle_value(cyc)).first;
            term *= it->second;
        }
        total += double(sign) * term;

        // next odometer state
        std::size_t b = 0;
        for (; b < blocks.size(); ++b) {
            if (std::next_permutation(perms[b].begin(), perms[b].end())) break;
            // wrapped around to identity; carry to the next block
        }
        if (b == blocks.size()) break;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Network builders
// ---------------------------------------------------------------------------

struct Context {
    const PointConfig& cfg;
    QuadSettings qs;
    ContourFamily family;

    Context(const PointConfig& c, const QuadSettings& settings)
        : cfg(c), qs(effective(settings)), family(c, qs) {}

    static QuadSettings effective(QuadSettings q) {
        q.nodes_per_ray = q.liu_nodes_per_ray;
        return q;
    }

    Eigen::VectorXcd weight_F(const QuadratureContour& c, int i, bool inverse) const {
        Eigen::VectorXcd w(c.size());
        for (int a = 0; a < c.size(); ++a) {
            const Complex F = eval_F(cfg, i, c.points[a]);
            w[a] = inverse ? c.weights[a] / F : c.weights[a] * F;
        }
        return w;
    }

    Eigen::VectorXcd weight_inv_f(const QuadratureContour& c, int i) const {
        Eigen::VectorXcd w(c.size());
        for (int a = 0; a < c.size(); ++a) w[a] = c.weights[a] / eval_f(cfg, i, c.points[a]);
        return w;
    }

    Eigen::VectorXcd weight_plain(const QuadratureContour& c) const {
        Eigen::VectorXcd w(c.size());
        for (int a = 0; a < c.size(); ++a) w[a] = c.weights[a];
        return w;
    }
};

void check_guards(const PointConfig& cfg, const MultiIndex& n) {
    if (n.m() != cfg.m()) throw std::invalid_argument("MultiIndex length must equal m");
    if (n.total() > 4) throw std::invalid_argument("cost guard: sum n_i <= 4");
    if (cfg.m() > 3) throw std::invalid_argument("cost guard: m <= 3");
}

// Core contour integral of one in/out expansion term. choice_u/choice_v give
// the contour pick (false = in, true = out) for each level >= 2 variable,
// flattened level by level; level-1 variables sit on the main contours.
Complex direct_core(const Context& ctx, const MultiIndex& n, const std::vector<bool>& choice_u,
                    const std::vector<bool>& choice_v) {
    Network net;
    const int m = n.m();
    std::vector<std::vector<int>> U(m), V(m);
    int slot = 0;
    for (int i = 1; i <= m; ++i) {
        for (int l = 0; l < n.n()[i - 1]; ++l) {
            const QuadratureContour& c =
                (i == 1) ? ctx.family.left_main()
                         : (choice_u[slot] ? ctx.family.left_out(i) : ctx.family.left_in(i));
            U[i - 1].push_back(net.add_strand(&c, ctx.weight_F(c, i, false)));
            if (i >= 2) ++slot;
        }
    }
    slot = 0;
    for (int i = 1; i <= m; ++i) {
        for (int l = 0; l < n.n()[i - 1]; ++l) {
            const QuadratureContour& c =
                (i == 1) ? ctx.family.right_main()
                         : (choice_v[slot] ? ctx.family.right_out(i) : ctx.family.right_in(i));
            V[i - 1].push_back(net.add_strand(&c, ctx.weight_F(c, i, true)));
            if (i >= 2) ++slot;
        }
    }
    // C(V1; U1) then C(U^i + V^{i+1}; V^i + U^{i+1}) for i = 1..m
    net.blocks.push_back({V[0], U[0], nullptr, -1});
    for (int i = 1; i <= m; ++i) {
        Block b;
        b.rows = U[i - 1];
        b.cols = V[i - 1];
        if (i < m) {
            b.rows.insert(b.rows.end(), V[i].begin(), V[i].end());
            b.cols.insert(b.cols.end(), U[i].begin(), U[i].end());
        }
        net.blocks.push_back(std::move(b));
    }
    return net.contract();
}

struct ZWeights {
    // per z-variable: the circle integral of the scalar factor, per
    // (u_in_count, u_out_count, v_in_count, v_out_count)
    Complex integral(const Context& ctx, int nj, int nj1, int u_out, int v_out) {
        const QuadratureContour circle = ctx.family.z_circle(ctx.qs.z_radius);
        Complex acc{};
        for (int k = 0; k < circle.size(); ++k) {
            const Complex z = circle.points[k];
            Complex g = std::pow(1.0 - z, nj) * std::pow(1.0 - 1.0 / z, nj1);
            const Complex win = 1.0 / (1.0 - z);
            const Complex wout = -z / (1.0 - z);
            for (int t = 0; t < nj1 - u_out; ++t) g *= win;
            for (int t = 0; t < u_out; ++t) g *= wout;
            for (int t = 0; t < nj1 - v_out; ++t) g *= win;
            for (int t = 0; t < v_out; ++t) g *= wout;
            acc += circle.weights[k] * g / (z * (1.0 - z));
        }
        return acc;
    }
};

// Scalar z-factor of one combo at a fixed z vector (eval_D_n path).
Complex z_scalar(const MultiIndex& n, const std::vector<Complex>& z,
                 const std::vector<bool>& choice_u, const std::vector<bool>& choice_v) {
    const int m = n.m();
    Complex g(1.0);
    for (int j = 1; j < m; ++j)
        g *= std::pow(1.0 - z[j - 1], n.n()[j - 1]) * std::pow(1.0 - 1.0 / z[j - 1], n.n()[j]);
    int slot = 0;
    for (int i = 2; i <= m; ++i)
        for (int l = 0; l < n.n()[i - 1]; ++l, ++slot) {
            const Complex& zz = z[i - 2];
            g *= choice_u[slot] ? -zz / (1.0 - zz) : 1.0 / (1.0 - zz);
        }
    slot = 0;
    for (int i = 2; i <= m; ++i)
        for (int l = 0; l < n.n()[i - 1]; ++l, ++slot) {
            const Complex& zz = z[i - 2];
            g *= choice_v[slot] ? -zz / (1.0 - zz) : 1.0 / (1.0 - zz);
        }
    return g;
}

int level2plus_count(const MultiIndex& n) {
    int c = 0;
    for (int i = 2; i <= n.m(); ++i) c += n.n()[i - 1];
    return c;
}

std::vector<bool> unpack_bits(unsigned mask, int count) {
    std::vector<bool> bits(count);
    for (int t = 0; t < count; ++t) bits[t] = (mask >> t) & 1u;
    return bits;
}

} // namespace

Complex eval_D_n(const PointConfig& cfg, const MultiIndex& n, const std::vector<Complex>& z,
                 const QuadSettings& qs) {
    check_guards(cfg, n);
    if (static_cast<int>(z.size()) != cfg.m() - 1)
        throw std::invalid_argument("eval_D_n: need m-1 z values");
    for (const Complex& zz : z) {
        const double r = std::abs(zz);
        if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("eval_D_n: |z_i| must lie in (0,1)");
    }
    if (n.total() == 0) return Complex(1.0);
    Context ctx(cfg, qs);
    const int slots = level2plus_count(n);
    Complex acc{};
    for (unsigned mu = 0; mu < (1u << slots); ++mu)
        for (unsigned mv = 0; mv < (1u << slots); ++mv) {
            const auto cu = unpack_bits(mu, slots);
            const auto cv = unpack_bits(mv, slots);
            acc += z_scalar(n, z, cu, cv) * direct_core(ctx, n, cu, cv);
        }
    return acc;
}

Complex hat_D_direct(const PointConfig& cfg, const MultiIndex& n, const QuadSettings& qs) {
    check_guards(cfg, n);
    if (n.total() == 0) return Complex(1.0);
    Context ctx(cfg, qs);
    const int m = cfg.m();
    const int slots = level2plus_count(n);
    ZWeights zw;
    Complex acc{};
    for (unsigned mu = 0; mu < (1u << slots); ++mu)
        for (unsigned mv = 0; mv < (1u << slots); ++mv) {
            const auto cu = unpack_bits(mu, slots);
            const auto cv = unpack_bits(mv, slots);
            // z-integrals factor across the z-variables; z_{i-1} touches the
            // level-i weights only.
            Complex coeff(1.0);
            int slot = 0;
            for (int i = 2; i <= m; ++i) {
                int u_out = 0, v_out = 0;
                for (int l = 0; l < n.n()[i - 1]; ++l) {
                    u_out += cu[slot + l] ? 1 : 0;
                    v_out += cv[slot + l] ? 1 : 0;
                }
                coeff *= zw.integral(ctx, n.n()[i - 2], n.n()[i - 1], u_out, v_out);
                slot += n.n()[i - 1];
            }
            if (coeff == Complex(0.0)) continue;
            acc += coeff * direct_core(ctx, n, cu, cv);
        }
    return acc;
}

Complex hat_D_stage(const PointConfig& cfg, const MultiIndex& n, const QuadSettings& qs,
                    Stage stage) {
    check_guards(cfg, n);
    if (n.total() == 0) return Complex(1.0);
    if (stage != Stage::lemma22i && !n.admissible()) return Complex(0.0);
    Context ctx(cfg, qs);
    const int m = cfg.m();
    const auto& nn = n.n();

    if (stage == Stage::lemma22i) {
        // all u^{(i)} on the in family, all v^{(i)} on the out family
        const int slots = level2plus_count(n);
        return direct_core(ctx, n, std::vector<bool>(slots, false), std::vector<bool>(slots, true));
    }

    const std::vector<int> kk = n.k();
    double coeff = 1.0;
    for (int i = 1; i < m; ++i)
        coeff *= std::tgamma(nn[i - 1] + 1.0) / std::tgamma(kk[i - 1] + 1.0);

    if (stage == Stage::lemma22ii) {
        Network net;
        std::vector<std::vector<int>> U(m), Vh(m);
        for (int i = 1; i <= m; ++i) {
            const QuadratureContour& c = ctx.family.left_in(i);
            for (int l = 0; l < nn[i - 1]; ++l)
                U[i - 1].push_back(net.add_strand(&c, ctx.weight_F(c, i, false)));
            const QuadratureContour& r = ctx.family.right_main();
            for (int l = 0; l < kk[i - 1]; ++l)
                Vh[i - 1].push_back(net.add_strand(&r, ctx.weight_inv_f(r, i)));
        }
        Block c0; // C(Vhat^m + ... + Vhat^1; U^1)
        for (int i = m; i >= 1; --i)
            c0.rows.insert(c0.rows.end(), Vh[i - 1].begin(), Vh[i - 1].end());
        c0.cols = U[0];
        net.blocks.push_back(std::move(c0));
        for (int i = 1; i <= m; ++i) { // C(U^i; U^{i+1} + Vhat^i)
            Block b;
            b.rows = U[i - 1];
            if (i < m) b.cols = U[i];
            b.cols.insert(b.cols.end(), Vh[i - 1].begin(), Vh[i - 1].end());
            net.blocks.push_back(std::move(b));
        }
        return coeff * net.contract();
    }

    // lemma23: C(Vhat; Uhat) * prod det[h_i] with uhat on Gamma_1L
    std::vector<Eigen::MatrixXcd> H(m);
    for (int i = 1; i <= m; ++i)
        if (kk[i - 1] > 0) H[i - 1] = h_matrix(cfg, i, ctx.family);
    Network net;
    std::vector<std::vector<int>> Uh(m), Vh(m);
    for (int i = 1; i <= m; ++i) {
        const QuadratureContour& l = ctx.family.left_main();
        const QuadratureContour& r = ctx.family.right_main();
        for (int t = 0; t < kk[i - 1]; ++t) {
            Uh[i - 1].push_back(net.add_strand(&l, ctx.weight_plain(l)));
            Vh[i - 1].push_back(net.add_strand(&r, ctx.weight_inv_f(r, i)));
        }
    }
    Block c0; // C(Vhat; Uhat), both in descending block order
    for (int i = m; i >= 1; --i) {
        c0.rows.insert(c0.rows.end(), Vh[i - 1].begin(), Vh[i - 1].end());
        c0.cols.insert(c0.cols.end(), Uh[i - 1].begin(), Uh[i - 1].end());
    }
    net.blocks.push_back(std::move(c0));
    for (int i = 1; i <= m; ++i) {
        if (kk[i - 1] == 0) continue;
        Block b;
        b.rows = Uh[i - 1];
        b.cols = Vh[i - 1];
        b.entry = &H[i - 1];
        b.entry_id = i;
        net.blocks.push_back(std::move(b));
    }
    return coeff * coeff * net.contract();
}

FredholmResult airy_cdf_via_sum(const PointConfig& cfg, int n_total_max, const QuadSettings& qs) {
    if (n_total_max < 0 || n_total_max > 3)
        throw std::invalid_argument("cost guard: airy_cdf_via_sum needs n_total_max <= 3");
    const int m = cfg.m();
    if (m > 3) throw std::invalid_argument("cost guard: m <= 3");

    // enumerate all n with sum <= cutoff, grouped by total
    std::vector<std::vector<std::vector<int>>> by_total(n_total_max + 1);
    std::vector<int> cur(m, 0);
    std::function<void(int, int)> rec = [&](int pos, int used) {
        if (pos == m) {
            by_total[used].push_back(cur);
            return;
        }
        for (int v = 0; used + v <= n_total_max; ++v) {
            cur[pos] = v;
            rec(pos + 1, used + v);
        }
        cur[pos] = 0;
    };
    rec(0, 0);

    FredholmResult res;
    Complex sum{};
    for (int cutoff = 0; cutoff <= n_total_max; ++cutoff) {
        for (const auto& nv : by_total[cutoff]) {
            MultiIndex n(nv);
            if (!n.admissible()) continue; // exact zero per the vanishing support
            double fact = 1.0;
            for (int v : nv) fact *= std::tgamma(v + 1.0);
            sum += hat_D_stage(cfg, n, qs, Stage::lemma23) / (fact * fact);
        }
        res.push(cutoff, sum);
    }
    return res;
}

} // namespace af::liu
