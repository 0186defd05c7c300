#pragma once

#include <string>
#include <vector>

#include "filtral/module.hpp"

namespace filtral {

/// Minimal projective cover P -> M, with P = (+) P_i^{m_i} where m_i is the
/// multiplicity of S_i in top(M). Assumes a basic algebra (all our algebras
/// are: bound quiver algebras and endomorphism algebras of multiplicity-free
/// tilting modules); the minimality assertion catches misuse.
inline Morphism projective_cover(const Module& M, const Budget& budget = {})
{
    const Algebra& A = M.algebra();
    const auto& F = A->field;
    const auto& can = canonical_modules(A, budget);
    if (M.dim() == 0) {
        Module P = zero_module(A);
        return Morphism{P, M, Mat(0, 0)};
    }
    Mat rad = radical_rows(M, budget);
    auto [top, top_proj] = quotient(M, rad);

    std::vector<Module> copies;
    std::vector<Mat> copy_maps; // rows of the map P_i -> M per copy
    const int ni = static_cast<int>(A->idempotents.size());
    for (int i = 0; i < ni; ++i) {
        Mat ti = row_space_basis(F, act_of(top, A->idempotents[i])); // (top M) e_i
        for (int w = 0; w < ti.rows; ++w) {
            // lift the top generator into M e_i
            Mat ei = act_of(M, A->idempotents[i]);
            Mat through = mul(F, ei, top_proj.m);
            auto x = solve_left(F, through, Mat::row_vector(ti.row(w)));
            require(x.has_value(), ErrorCode::Internal, "top projection not surjective on M e_i");
            Mat u = mul(F, *x, ei); // generator in M, u = u e_i
            const Module& Pi = can.projectives[i];
            const Mat& emb = can.projective_embeddings[i]; // rows of P_i in algebra coordinates
            Mat block(Pi.dim(), M.dim());
            for (int r = 0; r < Pi.dim(); ++r) {
                Mat img = mul(F, u, act_of(M, emb.row(r)));
                for (int c = 0; c < M.dim(); ++c)
                    block.at(r, c) = img.at(0, c);
            }
            copies.push_back(Pi);
            copy_maps.push_back(std::move(block));
        }
    }
    DirectSum ds = direct_sum(A, copies);
    Mat phi(ds.total.dim(), M.dim());
    int off = 0;
    for (size_t k = 0; k < copies.size(); ++k) {
        for (int r = 0; r < copies[k].dim(); ++r)
            for (int c = 0; c < M.dim(); ++c)
                phi.at(off + r, c) = copy_maps[k].at(r, c);
        off += copies[k].dim();
    }
    Morphism cover{ds.total, M, phi};
    require(rank(F, phi) == M.dim(), ErrorCode::Internal, "projective cover is not surjective");
    Mat ker = left_kernel(F, phi);
    require(row_space_contains(F, radical_rows(ds.total, budget), ker), ErrorCode::Internal,
            "cover kernel escapes the radical (non-basic algebra?)");
    return cover;
}

/// First syzygy with its embedding into the cover.
inline std::pair<Module, Morphism> syzygy(const Module& M, const Budget& budget = {})
{
    Morphism cover = projective_cover(M, budget);
    const auto& F = M.algebra()->field;
    Mat ker = left_kernel(F, cover.m);
    return restrict_to(cover.src, ker);
}

struct Resolution {
    Module target;
    std::vector<Module> terms;        // P_0, P_1, ...
    Morphism augmentation;            // P_0 -> M
    std::vector<Morphism> differentials; // d_i : P_i -> P_{i-1}, index 1..
    std::vector<Module> syzygies;     // Omega^1, Omega^2, ... (one past each term)
    bool minimal = true;
    bool complete = false;            // true iff the last syzygy is zero
};

/// Minimal projective resolution out to `steps` terms (or until it stops).
inline Resolution minimal_resolution(const Module& M, int steps, const Budget& budget = {})
{
    const auto& F = M.algebra()->field;
    Resolution res;
    res.target = M;
    Morphism cover = projective_cover(M, budget);
    res.terms.push_back(cover.src);
    res.augmentation = cover;
    Mat ker = left_kernel(F, cover.m);
    auto [omega, incl] = restrict_to(cover.src, ker);
    res.syzygies.push_back(omega);
    Morphism embed = incl; // Omega^k -> P_{k-1}
    for (int i = 1; i < steps; ++i) {
        if (res.syzygies.back().dim() == 0) {
            res.complete = true;
            return res;
        }
        Morphism c = projective_cover(res.syzygies.back(), budget);
        res.terms.push_back(c.src);
        res.differentials.push_back(compose(c, embed));
        Mat k2 = left_kernel(F, c.m);
        auto [om, in] = restrict_to(c.src, k2);
        res.syzygies.push_back(om);
        embed = in;
    }
    res.complete = res.syzygies.back().dim() == 0;
    return res;
}

/// Sanity checks on a resolution: d^2 = 0, exactness, minimality.
inline std::vector<std::string> resolution_violations(const Resolution& res, const Budget& budget = {})
{
    std::vector<std::string> out;
    const auto& F = res.target.algebra()->field;
    for (size_t i = 0; i + 1 < res.differentials.size(); ++i)
        if (!mul(F, res.differentials[i + 1].m, res.differentials[i].m).is_zero())
            out.push_back("d" + std::to_string(i + 2) + " . d" + std::to_string(i + 1) + " != 0");
    if (!res.differentials.empty() && !mul(F, res.differentials[0].m, res.augmentation.m).is_zero())
        out.push_back("d1 composed with the augmentation is nonzero");
    // exactness at P_i: rank(map out of P_i) + rank(map into P_i) = dim P_i
    for (size_t i = 0; i < res.terms.size(); ++i) {
        int out_rank = i == 0 ? rank(F, res.augmentation.m) : rank(F, res.differentials[i - 1].m);
        if (i < res.differentials.size()) {
            if (out_rank + rank(F, res.differentials[i].m) != res.terms[i].dim())
                out.push_back("complex not exact at term " + std::to_string(i));
        } else if (res.complete && out_rank != res.terms[i].dim()) {
            out.push_back("final differential is not injective");
        }
    }
    for (size_t i = 0; i < res.differentials.size(); ++i) {
        Mat img = row_space_basis(F, res.differentials[i].m);
        if (!row_space_contains(F, radical_rows(res.terms[i], budget), img))
            out.push_back("differential d" + std::to_string(i + 1) + " does not land in the radical");
    }
    return out;
}

struct PdVerdict {
    enum class Kind { Finite, Infinite, Unknown } kind = Kind::Unknown;
    int n = 0;                 // Finite: the projective dimension
    int witness_i = 0, witness_j = 0; // Infinite: Omega^i = Omega^j != 0, i < j
    int cutoff = 0;            // Unknown: search bound

    static PdVerdict finite(int n) { return PdVerdict{Kind::Finite, n, 0, 0, 0}; }
    static PdVerdict infinite(int i, int j) { return PdVerdict{Kind::Infinite, 0, i, j, 0}; }
    static PdVerdict unknown(int cutoff) { return PdVerdict{Kind::Unknown, 0, 0, 0, cutoff}; }
};

/// Iterates minimal syzygies: Finite(n) once a syzygy vanishes, Infinite with
/// a periodicity witness when two nonzero syzygies coincide up to iso, else
/// Unknown(cutoff).
inline PdVerdict proj_dim(const Module& M, int cutoff, const Budget& budget = {})
{
    require(cutoff >= 1, ErrorCode::Internal, "pd cutoff must be >= 1");
    if (M.dim() == 0)
        return PdVerdict::finite(0);
    std::vector<Module> omegas{M}; // Omega^0 = M
    for (int j = 1; j <= cutoff; ++j) {
        auto [om, incl] = syzygy(omegas.back(), budget);
        (void)incl;
        if (om.dim() == 0)
            return PdVerdict::finite(j - 1);
        for (size_t i = 0; i < omegas.size(); ++i)
            if (is_isomorphic(omegas[i], om, budget))
                return PdVerdict::infinite(static_cast<int>(i), j);
        omegas.push_back(om);
    }
    return PdVerdict::unknown(cutoff);
}

inline PdVerdict proj_dim(const Module& M, const Budget& budget = {}) { return proj_dim(M, budget.pd_cutoff, budget); }

/// Exact decision of pd M <= n (the (n+1)-st minimal syzygy vanishes).
inline bool pd_le(const Module& M, int n, const Budget& budget = {})
{
    if (M.dim() == 0)
        return true;
    Module om = M;
    for (int i = 0; i <= n; ++i) {
        om = syzygy(om, budget).first;
        if (om.dim() == 0)
            return true;
    }
    return false;
}

/// Injective side via the opposite algebra: id M = pd of D(M) over A^op.
inline PdVerdict inj_dim(const Module& M, int cutoff, const Budget& budget = {})
{
    return proj_dim(dual_module(M), cutoff, budget);
}

inline bool id_le(const Module& M, int n, const Budget& budget = {}) { return pd_le(dual_module(M), n, budget); }

namespace detail {

/// Coordinates of morphisms with respect to a hom basis (rows are the
/// canonical flattened basis).
struct HomCoords {
    std::vector<Morphism> basis;
    Mat flat;                // basis rows, flattened (already in rref)
    std::vector<int> pivots;

    static HomCoords of(const Module& M, const Module& N)
    {
        HomCoords hc;
        hc.basis = hom_basis(M, N);
        hc.flat = Mat(static_cast<int>(hc.basis.size()), M.dim() * N.dim());
        for (size_t r = 0; r < hc.basis.size(); ++r) {
            auto v = flatten(hc.basis[r].m);
            for (size_t c = 0; c < v.size(); ++c)
                hc.flat.at(static_cast<int>(r), static_cast<int>(c)) = v[c];
        }
        hc.pivots = rref_pivots(hc.flat);
        return hc;
    }

    std::vector<int> coords(const PrimeField& F, const Mat& hom) const
    {
        auto c = coords_in_rref(F, flat, pivots, flatten(hom));
        require(c.has_value(), ErrorCode::Internal, "matrix is not in the hom space");
        return *c;
    }
};

} // namespace detail

/// dim Ext^n(M, N), computed as the cohomology of Hom(P_*, N) for a minimal
/// projective resolution P_* of M.
inline int ext_dim(int n, const Module& M, const Module& N, const Budget& budget = {})
{
    require(n >= 0, ErrorCode::Internal, "negative Ext degree");
    require(M.algebra().same(N.algebra()), ErrorCode::AlgebraMismatch, "Ext across algebras");
    if (M.dim() == 0 || N.dim() == 0)
        return 0;
    if (n == 0)
        return hom_dim(M, N);
    const auto& F = M.algebra()->field;
    Resolution res = minimal_resolution(M, n + 2, budget);
    if (static_cast<int>(res.terms.size()) <= n)
        return 0; // resolution stopped before degree n
    auto hn = detail::HomCoords::of(res.terms[n], N);
    int dim_hom_n = static_cast<int>(hn.basis.size());
    // rank of Hom(d_n): Hom(P_{n-1}, N) -> Hom(P_n, N)
    auto precompose_rank = [&](int k) -> int {
        // d_k : P_k -> P_{k-1}; map phi in Hom(P_{k-1},N) to d_k ; phi
        if (k > static_cast<int>(res.differentials.size()))
            return 0;
        const Morphism& d = res.differentials[k - 1];
        auto hprev = detail::HomCoords::of(d.dst, N);
        if (hprev.basis.empty())
            return 0;
        Mat img(static_cast<int>(hprev.basis.size()), d.src.dim() * N.dim());
        for (size_t r = 0; r < hprev.basis.size(); ++r) {
            auto v = flatten(mul(F, d.m, hprev.basis[r].m));
            for (size_t c = 0; c < v.size(); ++c)
                img.at(static_cast<int>(r), static_cast<int>(c)) = v[c];
        }
        return rank(F, img);
    };
    int r_n = precompose_rank(n);
    int r_n1 = precompose_rank(n + 1);
    return dim_hom_n - r_n - r_n1;
}

/// Finds f : P -> Q with f ; through = target, where `through` is onto the
/// image of `target` (exists when P is projective). Deterministic solution in
/// hom-basis coordinates.
inline Morphism solve_through(const Morphism& target, const Morphism& through)
{
    require(target.dst.same(through.dst), ErrorCode::Internal, "solve_through target mismatch");
    const auto& F = target.src.algebra()->field;
    auto hb = hom_basis(target.src, through.src);
    Mat sys(static_cast<int>(hb.size()), target.src.dim() * target.dst.dim());
    for (size_t r = 0; r < hb.size(); ++r) {
        auto v = flatten(mul(F, hb[r].m, through.m));
        for (size_t c = 0; c < v.size(); ++c)
            sys.at(static_cast<int>(r), static_cast<int>(c)) = v[c];
    }
    auto x = solve_left(F, sys, Mat::row_vector(flatten(target.m)));
    require(x.has_value(), ErrorCode::Internal, "no factorization through the given epimorphism");
    Mat f(target.src.dim(), through.src.dim());
    for (size_t k = 0; k < hb.size(); ++k)
        if (x->at(0, static_cast<int>(k)))
            f = add(F, f, scale(F, x->at(0, static_cast<int>(k)), hb[k].m));
    return Morphism{target.src, through.src, f};
}

/// B-A-bimodule: a right A-module with a commuting left B-action. The left
/// action is stored in the same row convention, so lact(b1 b2) =
/// lact(b2) * lact(b1).
struct Bimodule {
    Algebra left;
    Algebra right;
    int dim = 0;
    std::vector<Mat> left_action;
    std::vector<Mat> right_action;

    Module right_module() const { return Module(right, dim, right_action); }
    Module left_as_right_over_op() const
    {
        // The left B-structure seen as a right B^op-module.
        return Module(opposite_algebra(left), dim, left_action);
    }
};

inline std::vector<std::string> bimodule_violations(const Bimodule& T)
{
    std::vector<std::string> out;
    auto rv = representation_violations(T.right_module());
    for (auto& v : rv)
        out.push_back("right action: " + v);
    auto lv = representation_violations(T.left_as_right_over_op());
    for (auto& v : lv)
        out.push_back("left action: " + v);
    const auto& F = T.right->field;
    for (int b = 0; b < T.left->dim && out.size() < 8; ++b)
        for (int a = 0; a < T.right->dim; ++a)
            if (mul(F, T.left_action[b], T.right_action[a]) != mul(F, T.right_action[a], T.left_action[b])) {
                out.push_back("left and right actions do not commute at basis pair (" + std::to_string(b) + "," +
                              std::to_string(a) + ")");
                break;
            }
    return out;
}

/// M (x)_B T with its right A-structure, together with the projection and a
/// section between pure-tensor coordinates and the quotient coordinates.
struct TensorSpace {
    Module result;
    Mat proj; // (dim M * dim T) x q
    Mat lift; // q x (dim M * dim T)
};

inline TensorSpace tensor_over(const Module& M, const Bimodule& T, const Budget& budget = {})
{
    (void)budget;
    require(M.algebra().same(T.left), ErrorCode::AlgebraMismatch, "tensor: module is not over the left algebra");
    const auto& F = T.right->field;
    const int m = M.dim(), t = T.dim;
    const int mt = m * t;
    const Algebra& B = T.left;
    // relation span: (x b) (x) t - x (x) (b t)
    Mat rel(m * B->dim * t, mt);
    int row = 0;
    for (int i = 0; i < m; ++i)
        for (int g = 0; g < B->dim; ++g) {
            const Mat& ag = M.action(g);
            const Mat& lg = T.left_action[g];
            for (int j = 0; j < t; ++j) {
                for (int k = 0; k < m; ++k)
                    if (ag.at(i, k))
                        rel.at(row, k * t + j) = F.add(rel.at(row, k * t + j), ag.at(i, k));
                for (int k = 0; k < t; ++k)
                    if (lg.at(j, k))
                        rel.at(row, i * t + k) = F.sub(rel.at(row, i * t + k), lg.at(j, k));
                ++row;
            }
        }
    Mat rb = row_space_basis(F, rel);
    auto piv = rref_pivots(rb);
    std::vector<bool> is_piv(mt, false);
    for (int c : piv)
        if (c >= 0)
            is_piv[c] = true;
    std::vector<int> np;
    for (int c = 0; c < mt; ++c)
        if (!is_piv[c])
            np.push_back(c);
    const int q = static_cast<int>(np.size());
    Mat proj(mt, q);
    for (int j = 0; j < mt; ++j) {
        std::vector<int> v(mt, 0);
        v[j] = 1;
        for (int r = 0; r < rb.rows; ++r) {
            int f = v[piv[r]];
            if (!f)
                continue;
            for (int c = 0; c < mt; ++c)
                v[c] = F.sub(v[c], F.mul(f, rb.at(r, c)));
        }
        for (int c = 0; c < q; ++c)
            proj.at(j, c) = v[np[c]];
    }
    Mat lift(q, mt);
    for (int c = 0; c < q; ++c)
        lift.at(c, np[c]) = 1;
    std::vector<Mat> act;
    for (int a = 0; a < T.right->dim; ++a) {
        Mat pure(mt, mt);
        const Mat& ra = T.right_action[a];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < t; ++j)
                for (int k = 0; k < t; ++k)
                    if (ra.at(j, k))
                        pure.at(i * t + j, i * t + k) = ra.at(j, k);
        act.push_back(mul(F, mul(F, lift, pure), proj));
    }
    return TensorSpace{Module(T.right, q, std::move(act)), std::move(proj), std::move(lift)};
}

/// Induced map f (x) id_T between tensor quotients.
inline Morphism tensor_map(const Morphism& f, const Bimodule& T, const TensorSpace& src_sp, const TensorSpace& dst_sp)
{
    const auto& F = T.right->field;
    const int t = T.dim;
    Mat pure(f.src.dim() * t, f.dst.dim() * t);
    for (int i = 0; i < f.src.dim(); ++i)
        for (int k = 0; k < f.dst.dim(); ++k)
            if (f.m.at(i, k))
                for (int j = 0; j < t; ++j)
                    pure.at(i * t + j, k * t + j) = f.m.at(i, k);
    return Morphism{src_sp.result, dst_sp.result, mul(F, mul(F, src_sp.lift, pure), dst_sp.proj)};
}

/// Tor_1^B(M, T) as a right module over the right algebra of T.
inline Module tor1_over(const Module& M, const Bimodule& T, const Budget& budget = {})
{
    require(M.algebra().same(T.left), ErrorCode::AlgebraMismatch, "tor: module is not over the left algebra");
    const auto& F = T.right->field;
    if (M.dim() == 0)
        return zero_module(T.right);
    Resolution res = minimal_resolution(M, 3, budget);
    if (res.terms.size() < 2)
        return zero_module(T.right); // projective module
    TensorSpace t0 = tensor_over(res.terms[0], T, budget);
    TensorSpace t1 = tensor_over(res.terms[1], T, budget);
    Morphism d1t = tensor_map(res.differentials[0], T, t1, t0);
    Mat ker = left_kernel(F, d1t.m);
    Mat img(0, t1.result.dim());
    if (res.terms.size() >= 3) {
        TensorSpace t2 = tensor_over(res.terms[2], T, budget);
        Morphism d2t = tensor_map(res.differentials[1], T, t2, t1);
        img = row_space_basis(F, d2t.m);
    }
    auto [W, wi] = restrict_to(t1.result, ker);
    (void)wi;
    // express img inside W coordinates (ker is already canonical)
    auto piv = rref_pivots(ker);
    Mat img_in_w(img.rows, W.dim());
    for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < W.dim(); ++c)
            img_in_w.at(r, c) = img.at(r, piv[c]);
    return quotient(W, img_in_w).first;
}

/// Plain k-dimension of Tor_n^A(X, Y) where Y is a left A-module presented as
/// a right module over the opposite algebra.
inline int tor_dim(int n, const Module& X, const Module& Y_over_op, const Budget& budget = {})
{
    require(n >= 0, ErrorCode::Internal, "negative Tor degree");
    const Algebra& A = X.algebra();
    require(opposite_algebra(A).same(Y_over_op.algebra()), ErrorCode::AlgebraMismatch,
            "Tor partner must live over the opposite algebra");
    if (X.dim() == 0 || Y_over_op.dim() == 0)
        return 0;
    const auto& F = A->field;
    // Treat Y as an (A, k)-bimodule over the trivial right algebra.
    PrimeField f = F;
    auto triv = make_structure_constant_algebra(f, 1, {{{1}}}, {1}, {{1}});
    Bimodule T;
    T.left = A;
    T.right = triv;
    T.dim = Y_over_op.dim();
    for (int g = 0; g < A->dim; ++g)
        T.left_action.push_back(Y_over_op.action(g));
    T.right_action.push_back(Mat::identity(Y_over_op.dim()));
    Resolution res = minimal_resolution(X, n + 2, budget);
    if (static_cast<int>(res.terms.size()) <= n)
        return 0;
    std::vector<TensorSpace> sp;
    for (auto& P : res.terms)
        sp.push_back(tensor_over(P, T, budget));
    if (n == 0) {
        Morphism d1 = res.differentials.empty() ? zero_morphism(zero_module(T.right), sp[0].result)
                                                : tensor_map(res.differentials[0], T, sp[1], sp[0]);
        return sp[0].result.dim() - rank(F, d1.m);
    }
    Morphism dn = tensor_map(res.differentials[n - 1], T, sp[n], sp[n - 1]);
    int ker_dim = sp[n].result.dim() - rank(F, dn.m);
    int im_dim = 0;
    if (n + 1 < static_cast<int>(res.terms.size())) {
        Morphism dn1 = tensor_map(res.differentials[n], T, sp[n + 1], sp[n]);
        im_dim = rank(F, dn1.m);
    }
    return ker_dim - im_dim;
}

} // namespace filtral
