#include "blowup/sections.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "blowup/projcoh.hpp"

namespace blowup {

long QMatrix::rank() const {
    std::vector<Rat> a = a_;
    long rank = 0;
    for (long col = 0; col < cols_ && rank < rows_; ++col) {
        long piv = -1;
        for (long r = rank; r < rows_; ++r) {
            if (a[r * cols_ + col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != rank)
            for (long c = col; c < cols_; ++c)
                std::swap(a[piv * cols_ + c], a[rank * cols_ + c]);
        Rat inv = Rat(1) / a[rank * cols_ + col];
        for (long r = rank + 1; r < rows_; ++r) {
            Rat f = a[r * cols_ + col] * inv;
            if (f == 0) continue;
            for (long c = col; c < cols_; ++c) a[r * cols_ + c] -= f * a[rank * cols_ + c];
        }
        ++rank;
    }
    return rank;
}

QMatrix QMatrix::augment(const QMatrix& other) const {
    if (rows_ != other.rows_) throw std::invalid_argument("QMatrix::augment: row mismatch");
    QMatrix m(rows_, cols_ + other.cols_);
    for (long r = 0; r < rows_; ++r) {
        for (long c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
        for (long c = 0; c < other.cols_; ++c) m.at(r, cols_ + c) = other.at(r, c);
    }
    return m;
}

long SubvarietySpec::restriction_degree(long p, long q) const {
    switch (kind) {
        case Kind::WP:
        case Kind::Q1:
            return p + q;
        case Kind::KAPPA:
        case Kind::Q2:
            return q;
    }
    return 0;
}

long SubvarietySpec::det_normal_degree() const {
    switch (kind) {
        case Kind::WP:
            return 2;
        case Kind::KAPPA:
            return 0;
        case Kind::Q1:
            return 3;
        case Kind::Q2:
            return 1;
    }
    return 0;
}

ChowClass SubvarietySpec::cycle_class() const {
    ChowClass xi2 = ChowClass::xi_power(n, 2);
    ChowClass a2 = ChowClass::alpha_power(n, 2);
    switch (kind) {
        case Kind::WP:
            return xi2;
        case Kind::KAPPA:
            return xi2 - a2;
        case Kind::Q1:
            return xi2 * Rat(2);
        case Kind::Q2:
            return (xi2 - a2) * Rat(2);
    }
    return xi2;
}

ChowClass SubvarietySpec::c2_structure() const { return cycle_class() * Rat(-1); }

std::string SubvarietySpec::name() const {
    switch (kind) {
        case Kind::WP:
            return "wp";
        case Kind::KAPPA:
            return "kappa";
        case Kind::Q1:
            return "Q1";
        case Kind::Q2:
            return "Q2";
    }
    return "?";
}

std::string SubvarietySpec::key() const { return name() + "@" + std::to_string(n); }

namespace {

using Mono = std::vector<int>;
using Poly = std::map<Mono, Rat>;

// All exponent vectors of total degree d in `vars` variables, lex order.
void monomials_rec(int vars, long d, Mono& cur, std::vector<Mono>& out) {
    if (static_cast<int>(cur.size()) == vars - 1) {
        cur.push_back(static_cast<int>(d));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long e = d; e >= 0; --e) {
        cur.push_back(static_cast<int>(e));
        monomials_rec(vars, d - e, cur, out);
        cur.pop_back();
    }
}

std::vector<Mono> monomials_deg(int vars, long d) {
    std::vector<Mono> out;
    if (d < 0 || vars <= 0) return out;
    Mono cur;
    monomials_rec(vars, d, cur, out);
    return out;
}

Poly poly_mul(const Poly& f, const Poly& g) {
    Poly h;
    for (const auto& [mf, cf] : f) {
        for (const auto& [mg, cg] : g) {
            Mono m(mf.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = mf[i] + mg[i];
            h[m] += cf * cg;
        }
    }
    return h;
}

Poly poly_pow(const Poly& f, int k, size_t vars) {
    Poly acc{{Mono(vars, 0), Rat(1)}};
    for (int i = 0; i < k; ++i) acc = poly_mul(acc, f);
    return acc;
}

struct TargetBlock {
    long row_offset = 0;
    int vars = 0;
    long deg = 0;
    std::map<Mono, long> index;  // model monomial -> local row
};

TargetBlock make_block(long row_offset, int vars, long deg) {
    TargetBlock b{row_offset, vars, deg, {}};
    auto mons = monomials_deg(vars, deg);
    for (long i = 0; i < static_cast<long>(mons.size()); ++i) b.index[mons[i]] = i;
    return b;
}

long rand_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(-19, 19);
    return dist(rng);
}

}  // namespace

SectionBasis SectionBasis::build(long p, long q, int n) {
    SectionBasis b{n, p, q, {}};
    if (p < 0 || p + q < 0) return b;
    for (const auto& m : monomials_deg(n + 1, p + q))
        if (m[0] <= p) b.monomials.push_back(m);
    return b;
}

long h0_line_model(long p, long q, int n) {
    return SectionBasis::build(p, q, n).size();
}

EvalSystem restrict_matrix(const std::vector<SubvarietySpec>& X, long p, long q,
                           const GenericityConfig& cfg) {
    if (X.empty()) throw std::invalid_argument("restrict_matrix: empty component list");
    const int n = X.front().n;
    for (size_t i = 0; i < X.size(); ++i) {
        if (X[i].n != n) throw std::invalid_argument("restrict_matrix: dimension mismatch");
        if ((X[i].kind == SubvarietySpec::Kind::Q1 || X[i].kind == SubvarietySpec::Kind::Q2) &&
            X[i].n != 4)
            throw std::invalid_argument("restrict_matrix: quadric components need n = 4");
        for (size_t j = 0; j < i; ++j)
            if (X[i].kind == X[j].kind)
                throw std::invalid_argument("restrict_matrix: repeated component kind");
    }

    std::mt19937_64 rng(cfg.seed);
    SectionBasis basis = SectionBasis::build(p, q, n);

    // Random quadric coefficients, fixed ones otherwise.  The quadric through
    // the ambient P^4 must miss p0, so its x0^2 coefficient stays nonzero.
    Poly q1_quad;  // in x1..x4 after substituting the hyperplane
    Poly q2_quad;  // in y1..y4
    Poly hyper_sub;  // x0 as a form in x1..x4 on the Q1 hyperplane
    for (const auto& comp : X) {
        if (comp.kind == SubvarietySpec::Kind::Q1) {
            // hyperplane c0 x0 + ... + c4 x4 = 0 with c0 != 0
            std::vector<Rat> c(5, Rat(0));
            if (cfg.random) {
                c[0] = 0;
                while (c[0] == 0) c[0] = rand_coeff(rng);
                for (int i = 1; i <= 4; ++i) c[i] = rand_coeff(rng);
            } else {
                c[0] = 1;
                c[2] = 1;  // x0 + x2 = 0
            }
            for (int i = 1; i <= 4; ++i) {
                if (c[i] == 0) continue;
                Mono m(4, 0);
                m[i - 1] = 1;
                hyper_sub[m] = -c[i] / c[0];
            }
            // ambient quadric sum c_ij x_i x_j, c_00 != 0
            std::vector<std::vector<Rat>> cc(5, std::vector<Rat>(5, Rat(0)));
            if (cfg.random) {
                cc[0][0] = 0;
                while (cc[0][0] == 0) cc[0][0] = rand_coeff(rng);
                for (int i = 0; i <= 4; ++i)
                    for (int j = i; j <= 4; ++j)
                        if (!(i == 0 && j == 0)) cc[i][j] = rand_coeff(rng);
            } else {
                for (int i = 0; i <= 4; ++i) cc[i][i] = 1;  // sum x_i^2
            }
            // substitute x0 -> hyper_sub
            for (int i = 0; i <= 4; ++i) {
                for (int j = i; j <= 4; ++j) {
                    if (cc[i][j] == 0) continue;
                    Poly xi, xj;
                    if (i == 0) {
                        xi = hyper_sub;
                    } else {
                        Mono m(4, 0);
                        m[i - 1] = 1;
                        xi = Poly{{m, Rat(1)}};
                    }
                    if (j == 0) {
                        xj = hyper_sub;
                    } else {
                        Mono m(4, 0);
                        m[j - 1] = 1;
                        xj = Poly{{m, Rat(1)}};
                    }
                    Poly term = poly_mul(xi, xj);
                    for (auto& [m, co] : term) q1_quad[m] += cc[i][j] * co;
                }
            }
        }
        if (comp.kind == SubvarietySpec::Kind::Q2) {
            if (cfg.random) {
                bool nonzero = false;
                while (!nonzero) {
                    q2_quad.clear();
                    for (int i = 0; i < 4; ++i) {
                        for (int j = i; j < 4; ++j) {
                            long co = rand_coeff(rng);
                            if (co == 0) continue;
                            Mono m(4, 0);
                            ++m[i];
                            ++m[j];
                            q2_quad[m] += co;
                            nonzero = true;
                        }
                    }
                }
            } else {
                for (int i = 0; i < 4; ++i) {
                    Mono m(4, 0);
                    m[i] = 2;
                    q2_quad[m] = 1;  // sum y_i^2
                }
            }
        }
    }

    // Target blocks, one per component.
    std::vector<TargetBlock> blocks;
    long total_rows = 0;
    for (const auto& comp : X) {
        long d = comp.restriction_degree(p, q);
        int vars = (comp.kind == SubvarietySpec::Kind::WP ||
                    comp.kind == SubvarietySpec::Kind::KAPPA)
                       ? n - 1
                       : 4;
        TargetBlock b = make_block(total_rows, vars, d);
        total_rows += static_cast<long>(b.index.size());
        blocks.push_back(std::move(b));
    }

    EvalSystem sys;
    sys.source_dim = basis.size();
    sys.target_dim = total_rows;
    sys.restriction = QMatrix(total_rows, basis.size());

    for (long col = 0; col < basis.size(); ++col) {
        const Mono& src = basis.monomials[col];
        const int a0 = src[0];
        for (size_t ci = 0; ci < X.size(); ++ci) {
            const auto& comp = X[ci];
            const auto& blk = blocks[ci];
            switch (comp.kind) {
                case SubvarietySpec::Kind::WP: {
                    // x0 = x1 = 0: the monomial survives iff it misses both.
                    if (a0 != 0 || src[1] != 0) break;
                    Mono t(src.begin() + 2, src.end());
                    auto it = blk.index.find(t);
                    if (it != blk.index.end())
                        sys.restriction.at(blk.row_offset + it->second, col) = 1;
                    break;
                }
                case SubvarietySpec::Kind::KAPPA: {
                    // coefficient form of x0^p on the divisor, then y_n = 0
                    if (a0 != p || src[n] != 0) break;
                    Mono t(src.begin() + 1, src.end() - 1);
                    auto it = blk.index.find(t);
                    if (it != blk.index.end())
                        sys.restriction.at(blk.row_offset + it->second, col) = 1;
                    break;
                }
                case SubvarietySpec::Kind::Q1: {
                    // substitute x0 by the hyperplane form
                    Mono rest(src.begin() + 1, src.end());
                    Poly img = poly_pow(hyper_sub, a0, 4);
                    Poly base{{rest, Rat(1)}};
                    img = poly_mul(img, base);
                    for (const auto& [m, co] : img) {
                        auto it = blk.index.find(m);
                        if (it != blk.index.end())
                            sys.restriction.at(blk.row_offset + it->second, col) += co;
                    }
                    break;
                }
                case SubvarietySpec::Kind::Q2: {
                    if (a0 != p) break;
                    Mono t(src.begin() + 1, src.end());
                    auto it = blk.index.find(t);
                    if (it != blk.index.end())
                        sys.restriction.at(blk.row_offset + it->second, col) = 1;
                    break;
                }
            }
        }
    }

    // Ideal-slice columns: quadric times the degree-(d-2) monomials, landing
    // in the component's own block.
    long gcols = 0;
    std::vector<std::vector<Mono>> gens(X.size());
    for (size_t ci = 0; ci < X.size(); ++ci) {
        const auto& comp = X[ci];
        if (comp.kind != SubvarietySpec::Kind::Q1 && comp.kind != SubvarietySpec::Kind::Q2)
            continue;
        long d = comp.restriction_degree(p, q);
        gens[ci] = monomials_deg(4, d - 2);
        gcols += static_cast<long>(gens[ci].size());
    }
    sys.ideal_slice = QMatrix(total_rows, gcols);
    long gc = 0;
    for (size_t ci = 0; ci < X.size(); ++ci) {
        const auto& comp = X[ci];
        const auto& blk = blocks[ci];
        const Poly& quad =
            (comp.kind == SubvarietySpec::Kind::Q1) ? q1_quad : q2_quad;
        for (const auto& mono : gens[ci]) {
            Poly prod = poly_mul(quad, Poly{{mono, Rat(1)}});
            for (const auto& [m, co] : prod) {
                auto it = blk.index.find(m);
                if (it != blk.index.end())
                    sys.ideal_slice.at(blk.row_offset + it->second, gc) += co;
            }
            ++gc;
        }
    }
    return sys;
}

long h0_ideal(const std::vector<SubvarietySpec>& X, long p, long q,
              const GenericityConfig& cfg) {
    EvalSystem sys = restrict_matrix(X, p, q, cfg);
    long rank_g = sys.ideal_slice.cols() > 0 ? sys.ideal_slice.rank() : 0;
    long rank_rg = sys.ideal_slice.cols() > 0
                       ? sys.restriction.augment(sys.ideal_slice).rank()
                       : sys.restriction.rank();
    return sys.source_dim - rank_rg + rank_g;
}

Int h_model(const SubvarietySpec& Y, int i, long m) {
    switch (Y.kind) {
        case SubvarietySpec::Kind::WP:
        case SubvarietySpec::Kind::KAPPA: {
            BottTable bott{Y.n - 2};
            return bott.h_line(i, m);
        }
        case SubvarietySpec::Kind::Q1:
        case SubvarietySpec::Kind::Q2: {
            // smooth quadric surface: chi(O(m)) = (m+1)^2, h^1 = 0
            if (i == 0 && m >= 0) return Int(m + 1) * Int(m + 1);
            if (i == 2 && m <= -2) return Int(m + 1) * Int(m + 1);
            return 0;
        }
    }
    return 0;
}

}  // namespace blowup
