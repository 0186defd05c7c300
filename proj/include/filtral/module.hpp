#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "filtral/algebra.hpp"

namespace filtral {

/// A finite-dimensional right module, stored as one action matrix per algebra
/// basis element. Vectors are rows; the action is v |-> v * act(b), so
/// act(x) * act(y) = act(x*y) and paths compose left to right.
struct ModuleData {
    Algebra alg;
    int dim = 0;
    std::vector<Mat> action;
};

class Module {
public:
    Module() = default;
    Module(Algebra alg, int dim, std::vector<Mat> action)
    {
        auto d = std::make_shared<ModuleData>();
        d->alg = std::move(alg);
        d->dim = dim;
        d->action = std::move(action);
        d_ = std::move(d);
    }

    const ModuleData& data() const { return *d_; }
    const Algebra& algebra() const { return d_->alg; }
    int dim() const { return d_->dim; }
    const Mat& action(int basis_index) const { return d_->action[basis_index]; }
    bool valid() const { return d_ != nullptr; }
    bool same(const Module& o) const { return d_ == o.d_; }

private:
    std::shared_ptr<const ModuleData> d_;
};

inline Module zero_module(const Algebra& A)
{
    std::vector<Mat> act(A->dim, Mat(0, 0));
    return Module(A, 0, std::move(act));
}

inline Module regular_module(const Algebra& A)
{
    std::vector<Mat> act;
    act.reserve(A->dim);
    for (int m = 0; m < A->dim; ++m)
        act.push_back(A->right_mult_matrix(m));
    return Module(A, A->dim, std::move(act));
}

/// Action of an arbitrary algebra element given by coordinates.
inline Mat act_of(const Module& M, const std::vector<int>& coords)
{
    const auto& F = M.algebra()->field;
    Mat out(M.dim(), M.dim());
    for (size_t i = 0; i < coords.size(); ++i) {
        if (!coords[i])
            continue;
        const Mat& a = M.action(static_cast<int>(i));
        for (size_t k = 0; k < out.a.size(); ++k)
            out.a[k] = F.add(out.a[k], F.mul(coords[i], a.a[k]));
    }
    return out;
}

/// Checks the representation axioms: act(b_i)*act(b_j) = act(b_i b_j) and
/// act(1) = id. Returns an empty list iff M is a module.
inline std::vector<std::string> representation_violations(const Module& M)
{
    std::vector<std::string> out;
    const auto& A = M.algebra().data();
    const auto& F = A.field;
    if (act_of(M, A.unit_coords) != Mat::identity(M.dim())) {
        out.push_back("unit does not act as identity");
        return out;
    }
    for (int i = 0; i < A.dim && out.size() < 8; ++i)
        for (int j = 0; j < A.dim; ++j) {
            Mat lhs = mul(F, M.action(i), M.action(j));
            Mat rhs = act_of(M, A.struct_consts[i][j]);
            if (lhs != rhs) {
                out.push_back("action incompatible with product " + A.basis_labels[i] + " * " + A.basis_labels[j]);
                break;
            }
        }
    return out;
}

struct Morphism {
    Module src;
    Module dst;
    Mat m; // src.dim x dst.dim, applied as v |-> v * m

    bool is_zero() const { return m.is_zero(); }
};

inline Morphism zero_morphism(const Module& src, const Module& dst)
{
    return Morphism{src, dst, Mat(src.dim(), dst.dim())};
}

inline Morphism identity_morphism(const Module& M) { return Morphism{M, M, Mat::identity(M.dim())}; }

/// f then g.
inline Morphism compose(const Morphism& f, const Morphism& g)
{
    require(f.dst.same(g.src), ErrorCode::Internal, "morphism composition mismatch");
    return Morphism{f.src, g.dst, mul(f.src.algebra()->field, f.m, g.m)};
}

inline bool is_morphism(const Morphism& f)
{
    const auto& A = f.src.algebra();
    if (!A.same(f.dst.algebra()))
        return false;
    const auto& F = A->field;
    for (int b = 0; b < A->dim; ++b)
        if (mul(F, f.src.action(b), f.m) != mul(F, f.m, f.dst.action(b)))
            return false;
    return true;
}

namespace detail {

/// Generator indices sufficient for intertwining checks: trivial paths and
/// arrows for quiver algebras, all basis elements otherwise.
inline std::vector<int> generator_indices(const Algebra& A)
{
    std::vector<int> out;
    if (A->presentation) {
        for (int i = 0; i < A->dim; ++i)
            if (A->path_length[i] <= 1)
                out.push_back(i);
    } else {
        for (int i = 0; i < A->dim; ++i)
            out.push_back(i);
    }
    return out;
}

} // namespace detail

/// Basis of Hom(M, N) in a deterministic order (canonical nullspace basis of
/// the intertwining system over row-major flattened matrices).
inline std::vector<Morphism> hom_basis(const Module& M, const Module& N)
{
    require(M.algebra().same(N.algebra()), ErrorCode::AlgebraMismatch, "hom between modules over different algebras");
    const auto& F = M.algebra()->field;
    const int m = M.dim(), n = N.dim();
    if (m == 0 || n == 0)
        return {};
    auto gens = detail::generator_indices(M.algebra());
    Mat sys(static_cast<int>(gens.size()) * m * n, m * n);
    int row = 0;
    for (int g : gens) {
        const Mat& am = M.action(g);
        const Mat& an = N.action(g);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                for (int k = 0; k < m; ++k)
                    if (am.at(i, k))
                        sys.at(row, k * n + j) = F.add(sys.at(row, k * n + j), am.at(i, k));
                for (int k = 0; k < n; ++k)
                    if (an.at(k, j))
                        sys.at(row, i * n + k) = F.sub(sys.at(row, i * n + k), an.at(k, j));
                ++row;
            }
    }
    Mat sols = null_space(F, sys);
    std::vector<Morphism> out;
    out.reserve(sols.rows);
    for (int r = 0; r < sols.rows; ++r)
        out.push_back(Morphism{M, N, unflatten(sols.row(r), m, n)});
    return out;
}

inline int hom_dim(const Module& M, const Module& N) { return static_cast<int>(hom_basis(M, N).size()); }

/// An action-invariant subspace in canonical reduced echelon form.
struct Submodule {
    Module parent;
    Mat basis; // rref rows

    int dim() const { return basis.rows; }
    std::string key() const { return basis.key(); }
};

inline bool is_invariant_rows(const Module& M, const Mat& rows)
{
    const auto& F = M.algebra()->field;
    Mat b = row_space_basis(F, rows);
    for (int g : detail::generator_indices(M.algebra())) {
        if (!row_space_contains(F, b, mul(F, b, M.action(g))))
            return false;
    }
    return true;
}

inline Submodule make_submodule(const Module& M, const Mat& rows)
{
    const auto& F = M.algebra()->field;
    Mat b = row_space_basis(F, rows);
    require(b.cols == M.dim() || b.rows == 0, ErrorCode::NotASubmodule, "basis width mismatch");
    if (b.rows == 0)
        b = Mat(0, M.dim());
    require(is_invariant_rows(M, b), ErrorCode::NotASubmodule, "subspace is not action-invariant");
    return Submodule{M, b};
}

inline Submodule zero_submodule(const Module& M) { return Submodule{M, Mat(0, M.dim())}; }
inline Submodule full_submodule(const Module& M) { return Submodule{M, Mat::identity(M.dim())}; }

/// Smallest submodule containing the given rows: closes the row space under
/// the action of the whole algebra basis.
inline Mat generated_submodule_rows(const Module& M, const Mat& rows)
{
    const auto& F = M.algebra()->field;
    Mat acc = rows;
    for (int b = 0; b < M.algebra()->dim; ++b)
        acc = vstack(acc, mul(F, rows, M.action(b)));
    return row_space_basis(F, acc);
}

/// Restriction of M to an invariant subspace; returns the submodule as a
/// module in its own coordinates together with the inclusion morphism.
inline std::pair<Module, Morphism> restrict_to(const Module& M, const Mat& rows)
{
    const auto& F = M.algebra()->field;
    Mat b = row_space_basis(F, rows);
    auto piv = rref_pivots(b);
    const int k = b.rows;
    std::vector<Mat> act;
    act.reserve(M.algebra()->dim);
    for (int g = 0; g < M.algebra()->dim; ++g) {
        Mat img = mul(F, b, M.action(g)); // k x n, rows lie in span(b)
        Mat small(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                small.at(r, c) = img.at(r, piv[c]);
        require(mul(F, small, b) == img, ErrorCode::NotASubmodule, "subspace is not action-invariant");
        act.push_back(std::move(small));
    }
    Module S(M.algebra(), k, std::move(act));
    return {S, Morphism{S, M, b}};
}

inline std::pair<Module, Morphism> restrict_to(const Submodule& L) { return restrict_to(L.parent, L.basis); }

/// Quotient by an invariant subspace with the canonical projection.
inline std::pair<Module, Morphism> quotient(const Module& M, const Mat& sub_rows)
{
    const auto& F = M.algebra()->field;
    Mat b = row_space_basis(F, sub_rows);
    require(is_invariant_rows(M, b), ErrorCode::NotASubmodule, "quotient by a non-invariant subspace");
    auto piv = rref_pivots(b);
    std::vector<bool> is_piv(M.dim(), false);
    for (int c : piv)
        if (c >= 0)
            is_piv[c] = true;
    std::vector<int> np;
    for (int c = 0; c < M.dim(); ++c)
        if (!is_piv[c])
            np.push_back(c);
    const int q = static_cast<int>(np.size());
    // proj[j][c]: the class of e_j expressed on the non-pivot coordinates.
    Mat proj(M.dim(), q);
    for (int j = 0; j < M.dim(); ++j) {
        std::vector<int> v(M.dim(), 0);
        v[j] = 1;
        for (int r = 0; r < b.rows; ++r) {
            int f = v[piv[r]];
            if (!f)
                continue;
            for (int c = 0; c < M.dim(); ++c)
                v[c] = F.sub(v[c], F.mul(f, b.at(r, c)));
        }
        for (int c = 0; c < q; ++c)
            proj.at(j, c) = v[np[c]];
    }
    Mat lift(q, M.dim());
    for (int c = 0; c < q; ++c)
        lift.at(c, np[c]) = 1;
    std::vector<Mat> act;
    act.reserve(M.algebra()->dim);
    for (int g = 0; g < M.algebra()->dim; ++g)
        act.push_back(mul(F, mul(F, lift, M.action(g)), proj));
    Module Q(M.algebra(), q, std::move(act));
    return {Q, Morphism{M, Q, proj}};
}

inline std::pair<Module, Morphism> quotient(const Module& M, const Submodule& L)
{
    require(L.parent.same(M), ErrorCode::NotASubmodule, "submodule of a different module");
    return quotient(M, L.basis);
}

struct ExactParts {
    Module kernel;
    Morphism kernel_incl; // kernel -> src
    Module image;
    Morphism image_incl;    // image -> dst
    Morphism corestriction; // src -> image
    Module cokernel;
    Morphism cokernel_proj; // dst -> cokernel
};

inline ExactParts exact_parts(const Morphism& f)
{
    const auto& F = f.src.algebra()->field;
    Mat ker_rows = left_kernel(F, f.m);
    auto [K, ki] = restrict_to(f.src, ker_rows);
    Mat img_rows = row_space_basis(F, f.m);
    auto [I, ii] = restrict_to(f.dst, img_rows);
    auto piv = rref_pivots(img_rows);
    Mat corestrict(f.src.dim(), I.dim());
    for (int r = 0; r < f.src.dim(); ++r)
        for (int c = 0; c < I.dim(); ++c)
            corestrict.at(r, c) = f.m.at(r, piv[c]);
    auto [C, cp] = quotient(f.dst, img_rows);
    return ExactParts{K, ki, I, ii, Morphism{f.src, I, corestrict}, C, cp};
}

/// All action-invariant subspaces of M, as canonical echelon bases including 0
/// and M. Computed as the sum-closure of the cyclic submodules; requires p^dim
/// to be desk-sized and throws CapExceeded beyond the configured cap.
inline std::vector<Submodule> all_submodules(const Module& M, const Budget& budget = {})
{
    const auto& F = M.algebra()->field;
    const int n = M.dim();
    const int p = F.p();
    double vectors = 1;
    for (int i = 0; i < n; ++i) {
        vectors *= p;
        require(vectors <= 2e9, ErrorCode::CapExceeded, "p^dim too large for submodule enumeration");
    }
    std::set<std::string> seen;
    std::vector<Mat> work;
    auto push = [&](const Mat& rows) {
        if (seen.insert(rows.key()).second) {
            require(static_cast<long>(seen.size()) <= budget.submodule_cap, ErrorCode::CapExceeded,
                    "submodule count exceeds cap (" + std::to_string(budget.submodule_cap) + ")");
            work.push_back(rows);
        }
    };
    push(Mat(0, n));
    long total = static_cast<long>(vectors);
    std::vector<int> v(n, 0);
    for (long idx = 1; idx < total; ++idx) {
        // base-p counter, most significant coordinate first
        int c = n - 1;
        while (true) {
            if (++v[c] < p)
                break;
            v[c] = 0;
            --c;
        }
        push(generated_submodule_rows(M, Mat::row_vector(v)));
    }
    // close under pairwise sums
    for (size_t i = 0; i < work.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            push(row_space_basis(F, vstack(work[i], work[j])));
    std::sort(work.begin(), work.end(), [](const Mat& a, const Mat& b) {
        if (a.rows != b.rows)
            return a.rows < b.rows;
        return a.a < b.a;
    });
    std::vector<Submodule> out;
    out.reserve(work.size());
    for (auto& rows : work)
        out.push_back(Submodule{M, std::move(rows)});
    return out;
}

/// Basis of rad A as rows in algebra coordinates. For quiver algebras this is
/// the span of the nontrivial path classes; otherwise it is computed as the
/// intersection of the maximal submodules of the regular module.
inline Mat algebra_radical_rows(const Algebra& A, const Budget& budget = {})
{
    {
        std::lock_guard<std::mutex> lk(A->cache_mu);
        if (A->radical_cache)
            return *A->radical_cache;
    }
    Module reg = regular_module(A);
    auto subs = all_submodules(reg, budget);
    // maximal proper submodules
    std::vector<const Mat*> proper;
    for (const auto& s : subs)
        if (s.dim() < A->dim)
            proper.push_back(&s.basis);
    Mat rad = Mat::identity(A->dim);
    const auto& F = A->field;
    for (size_t i = 0; i < proper.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < proper.size(); ++j) {
            if (i == j || proper[j]->rows <= proper[i]->rows)
                continue;
            if (row_space_contains(F, *proper[j], *proper[i])) {
                maximal = false;
                break;
            }
        }
        if (maximal)
            rad = intersect_rows(F, rad, *proper[i]);
    }
    std::lock_guard<std::mutex> lk(A->cache_mu);
    if (!A->radical_cache)
        A->radical_cache = rad;
    return *A->radical_cache;
}

/// rad M = M * rad A.
inline Mat radical_rows(const Module& M, const Budget& budget = {})
{
    const auto& F = M.algebra()->field;
    Mat radA = algebra_radical_rows(M.algebra(), budget);
    Mat acc(0, M.dim());
    for (int r = 0; r < radA.rows; ++r)
        acc = vstack(acc, act_of(M, radA.row(r)));
    return row_space_basis(F, acc);
}

/// soc M = annihilator of rad A.
inline Mat socle_rows(const Module& M, const Budget& budget = {})
{
    const auto& F = M.algebra()->field;
    Mat radA = algebra_radical_rows(M.algebra(), budget);
    if (radA.rows == 0)
        return Mat::identity(M.dim());
    Mat stacked(0, 0);
    for (int r = 0; r < radA.rows; ++r) {
        Mat a = act_of(M, radA.row(r));
        stacked = stacked.rows == 0 && stacked.cols == 0 ? a : hstack(stacked, a);
    }
    return left_kernel(F, stacked);
}

inline std::vector<int> dim_vector(const Module& M)
{
    const auto& F = M.algebra()->field;
    std::vector<int> out;
    for (const auto& e : M.algebra()->idempotents)
        out.push_back(rank(F, act_of(M, e)));
    return out;
}

/// Smallest nonzero submodule reachable from the socle: a minimal cyclic
/// submodule, ties broken by the lexicographically smallest echelon basis.
inline Mat minimal_simple_submodule_rows(const Module& M, const Budget& budget = {})
{
    require(M.dim() > 0, ErrorCode::Internal, "simple submodule of the zero module");
    const auto& F = M.algebra()->field;
    Mat soc = socle_rows(M, budget);
    const int s = soc.rows;
    const int p = F.p();
    long total = 1;
    for (int i = 0; i < s; ++i) {
        total *= p;
        require(total <= (1L << 26), ErrorCode::CapExceeded, "socle too large for simple-submodule sweep");
    }
    Mat best;
    std::vector<int> v(s, 0);
    for (long idx = 1; idx < total; ++idx) {
        int c = s - 1;
        while (true) {
            if (++v[c] < p)
                break;
            v[c] = 0;
            --c;
        }
        Mat vec = mul(F, Mat::row_vector(v), soc);
        Mat cyc = generated_submodule_rows(M, vec);
        if (best.rows == 0 || cyc.rows < best.rows || (cyc.rows == best.rows && cyc.a < best.a))
            best = cyc;
    }
    return best;
}

struct StructureInfo {
    Mat radical;
    Mat socle;
    Module top;
    Morphism top_proj;
    int length = 0;
    std::vector<int> dim_vec;
    // Ascending chain of submodule bases 0 = C_0 < ... < C_len = M with simple
    // factors, and the factors themselves.
    std::vector<Mat> comp_chain;
    std::vector<Module> comp_factors;
};

inline StructureInfo structure(const Module& M, const Budget& budget = {})
{
    const auto& F = M.algebra()->field;
    StructureInfo info;
    info.radical = radical_rows(M, budget);
    info.socle = socle_rows(M, budget);
    auto [top, tp] = quotient(M, info.radical);
    info.top = top;
    info.top_proj = tp;
    info.dim_vec = dim_vector(M);
    info.comp_chain.push_back(Mat(0, M.dim()));
    // Peel simple submodules bottom-up; each step picks the first socle
    // constituent in canonical order.
    Mat cur(0, M.dim()); // basis of current stage in M coordinates
    Module stage = M;
    Morphism stage_proj = identity_morphism(M); // M -> M/cur
    while (stage.dim() > 0) {
        Mat s = minimal_simple_submodule_rows(stage, budget);
        auto [fac, fi] = restrict_to(stage, s);
        (void)fi;
        info.comp_factors.push_back(fac);
        // pull back to M coordinates: lift the rows of s through M -> stage
        auto lift = solve_left(F, stage_proj.m, Mat::identity(stage.dim()));
        require(lift.has_value(), ErrorCode::Internal, "projection not surjective");
        Mat lifted = mul(F, s, *lift);
        Mat pre = row_space_basis(F, vstack(cur, lifted));
        info.comp_chain.push_back(pre);
        cur = pre;
        auto [q, qp] = quotient(M, cur);
        stage = q;
        stage_proj = qp;
    }
    info.length = static_cast<int>(info.comp_factors.size());
    return info;
}

inline int module_length(const Module& M, const Budget& budget = {})
{
    if (M.dim() == 0)
        return 0;
    return structure(M, budget).length;
}

namespace detail {

/// Sweeps nonzero coefficient tuples over a basis of matrices in lex order,
/// calling fn on each combination until it returns true. Throws if the sweep
/// space exceeds the cap.
template <typename Fn>
bool coefficient_sweep(const PrimeField& F, const std::vector<Mat>& basis, long cap, Fn&& fn)
{
    const int k = static_cast<int>(basis.size());
    if (k == 0)
        return false;
    double total = 1;
    for (int i = 0; i < k; ++i) {
        total *= F.p();
        require(total <= static_cast<double>(cap), ErrorCode::SearchCapExceeded,
                "coefficient sweep exceeds cap");
    }
    std::vector<int> c(k, 0);
    long n = static_cast<long>(total);
    Mat acc(basis[0].rows, basis[0].cols);
    for (long idx = 1; idx < n; ++idx) {
        int pos = k - 1;
        while (true) {
            if (++c[pos] < F.p())
                break;
            c[pos] = 0;
            --pos;
        }
        acc = Mat(basis[0].rows, basis[0].cols);
        for (int i = 0; i < k; ++i)
            if (c[i])
                acc = add(F, acc, scale(F, c[i], basis[i]));
        if (fn(acc))
            return true;
    }
    return false;
}

} // namespace detail

/// True iff an invertible intertwiner exists; decided by a deterministic
/// sweep of the hom space after cheap invariant screening.
inline bool is_isomorphic(const Module& M, const Module& N, const Budget& budget = {})
{
    require(M.algebra().same(N.algebra()), ErrorCode::AlgebraMismatch, "iso test across algebras");
    if (M.dim() != N.dim())
        return false;
    if (M.dim() == 0)
        return true;
    if (dim_vector(M) != dim_vector(N))
        return false;
    const auto& F = M.algebra()->field;
    auto homs = hom_basis(M, N);
    std::vector<Mat> mats;
    mats.reserve(homs.size());
    for (auto& h : homs)
        mats.push_back(h.m);
    bool found = false;
    detail::coefficient_sweep(F, mats, budget.sweep_cap, [&](const Mat& f) {
        if (is_invertible(F, f)) {
            found = true;
            return true;
        }
        return false;
    });
    return found;
}

struct Summand {
    Module part;
    Morphism incl; // part -> M
    Morphism proj; // M -> part
};

namespace detail {

inline void split_recursive(const Morphism& incl, const Morphism& proj, std::vector<Summand>& out,
                            const Budget& budget)
{
    // incl/proj relate the current piece to the root module.
    const Module& piece = incl.src;
    if (piece.dim() == 0)
        return;
    const auto& F = piece.algebra()->field;
    auto homs = hom_basis(piece, piece);
    std::vector<Mat> mats;
    for (auto& h : homs)
        mats.push_back(h.m);
    Mat idem;
    bool found = detail::coefficient_sweep(F, mats, budget.sweep_cap, [&](const Mat& f) {
        if (f == Mat::identity(piece.dim()))
            return false;
        if (mul(F, f, f) == f) {
            idem = f;
            return true;
        }
        return false;
    });
    if (!found) {
        out.push_back(Summand{piece, incl, proj});
        return;
    }
    // piece = im(e) (+) ker(e)
    auto [img, img_incl] = restrict_to(piece, row_space_basis(F, idem));
    auto piv = rref_pivots(img_incl.m);
    Mat retr(piece.dim(), img.dim());
    for (int r = 0; r < piece.dim(); ++r)
        for (int c = 0; c < img.dim(); ++c)
            retr.at(r, c) = idem.at(r, piv[c]);
    Morphism img_retr{piece, img, retr};
    Mat comp = sub(F, Mat::identity(piece.dim()), idem);
    auto [ker, ker_incl] = restrict_to(piece, row_space_basis(F, comp));
    auto kpiv = rref_pivots(ker_incl.m);
    Mat kretr(piece.dim(), ker.dim());
    for (int r = 0; r < piece.dim(); ++r)
        for (int c = 0; c < ker.dim(); ++c)
            kretr.at(r, c) = comp.at(r, kpiv[c]);
    Morphism ker_retr{piece, ker, kretr};
    split_recursive(compose(img_incl, incl), compose(proj, img_retr), out, budget);
    split_recursive(compose(ker_incl, incl), compose(proj, ker_retr), out, budget);
}

} // namespace detail

/// Indecomposable direct summands with multiplicity, with inclusion and
/// projection maps onto each summand (proj . incl = id, incl . proj are
/// orthogonal idempotents summing to the identity).
inline std::vector<Summand> decompose_with_maps(const Module& M, const Budget& budget = {})
{
    std::vector<Summand> out;
    detail::split_recursive(identity_morphism(M), identity_morphism(M), out, budget);
    return out;
}

inline std::vector<Module> decompose(const Module& M, const Budget& budget = {})
{
    std::vector<Module> out;
    for (auto& s : decompose_with_maps(M, budget))
        out.push_back(s.part);
    return out;
}

struct DirectSum {
    Module total;
    std::vector<Morphism> incl;
    std::vector<Morphism> proj;
};

inline DirectSum direct_sum(const Algebra& A, const std::vector<Module>& parts)
{
    int n = 0;
    for (const auto& p : parts) {
        require(p.algebra().same(A), ErrorCode::AlgebraMismatch, "direct sum across algebras");
        n += p.dim();
    }
    std::vector<Mat> act;
    for (int g = 0; g < A->dim; ++g) {
        Mat big(n, n);
        int off = 0;
        for (const auto& p : parts) {
            const Mat& a = p.action(g);
            for (int r = 0; r < p.dim(); ++r)
                for (int c = 0; c < p.dim(); ++c)
                    big.at(off + r, off + c) = a.at(r, c);
            off += p.dim();
        }
        act.push_back(std::move(big));
    }
    Module total(A, n, std::move(act));
    DirectSum out{total, {}, {}};
    int off = 0;
    for (const auto& p : parts) {
        Mat in(p.dim(), n), pr(n, p.dim());
        for (int r = 0; r < p.dim(); ++r) {
            in.at(r, off + r) = 1;
            pr.at(off + r, r) = 1;
        }
        out.incl.push_back(Morphism{p, total, in});
        out.proj.push_back(Morphism{total, p, pr});
        off += p.dim();
    }
    return out;
}

/// Dual module over the opposite algebra: act_{DM}(b) = act_M(b)^T.
inline Module dual_module(const Module& M)
{
    Algebra op = opposite_algebra(M.algebra());
    std::vector<Mat> act;
    act.reserve(M.algebra()->dim);
    for (int g = 0; g < M.algebra()->dim; ++g)
        act.push_back(transpose(M.action(g)));
    return Module(op, M.dim(), std::move(act));
}

struct CanonicalModules {
    std::vector<Module> projectives;
    std::vector<Mat> projective_embeddings; // rows of P_i inside the regular module
    std::vector<Module> injectives;
    std::vector<Module> simples;
    std::vector<Morphism> top_maps; // P_i -> S_i
};

/// P_i = e_i A, I_i = D(A e_i), S_i = top P_i, one triple per idempotent.
/// Cached per algebra.
inline const CanonicalModules& canonical_modules(const Algebra& A, const Budget& budget = {})
{
    {
        std::lock_guard<std::mutex> lk(A->cache_mu);
        if (A->canonical_cache)
            return *std::static_pointer_cast<const CanonicalModules>(A->canonical_cache);
    }
    CanonicalModules out;
    const auto& F = A->field;
    Module reg = regular_module(A);
    for (const auto& e : A->idempotents) {
        Mat rows = row_space_basis(F, A->left_mult_matrix(e)); // e_i * A
        auto [P, incl] = restrict_to(reg, rows);
        out.projectives.push_back(P);
        out.projective_embeddings.push_back(incl.m);
        Mat rad = radical_rows(P, budget);
        auto [S, sp] = quotient(P, rad);
        out.simples.push_back(S);
        out.top_maps.push_back(sp);
    }
    Algebra op = opposite_algebra(A);
    Module reg_op = regular_module(op);
    for (const auto& e : A->idempotents) {
        Mat rows = row_space_basis(F, op->left_mult_matrix(e)); // e_i *_op A^op = A e_i
        auto [Pop, incl] = restrict_to(reg_op, rows);
        (void)incl;
        out.injectives.push_back(dual_module(Pop));
    }
    auto cached = std::make_shared<CanonicalModules>(std::move(out));
    std::lock_guard<std::mutex> lk(A->cache_mu);
    if (!A->canonical_cache)
        A->canonical_cache = cached;
    return *std::static_pointer_cast<const CanonicalModules>(A->canonical_cache);
}

/// Trace of N in M: the sum of the images of all morphisms N -> M.
inline Mat trace_rows(const Module& N, const Module& M)
{
    const auto& F = M.algebra()->field;
    Mat acc(0, M.dim());
    for (const auto& h : hom_basis(N, M))
        acc = vstack(acc, h.m);
    return row_space_basis(F, acc);
}

/// Iso-class registry: deduplicates modules up to isomorphism and hands out
/// deterministic labels. Buckets by cheap invariants before sweeping.
class IsoRegistry {
public:
    explicit IsoRegistry(Budget budget = {}) : budget_(budget) {}

    int find(const Module& M) const
    {
        auto key = invariant_key(M);
        auto it = buckets_.find(key);
        if (it == buckets_.end())
            return -1;
        for (int idx : it->second)
            if (is_isomorphic(entries_[idx], M, budget_))
                return idx;
        return -1;
    }

    int find_or_insert(const Module& M)
    {
        int idx = find(M);
        if (idx >= 0)
            return idx;
        idx = static_cast<int>(entries_.size());
        entries_.push_back(M);
        buckets_[invariant_key(M)].push_back(idx);
        labels_.push_back("M" + std::to_string(idx));
        return idx;
    }

    void set_label(int idx, const std::string& label) { labels_[idx] = label; }
    const std::string& label(int idx) const { return labels_[idx]; }
    const Module& entry(int idx) const { return entries_[idx]; }
    int size() const { return static_cast<int>(entries_.size()); }

private:
    std::string invariant_key(const Module& M) const
    {
        std::string k = std::to_string(M.dim());
        for (int d : dim_vector(M))
            k += "," + std::to_string(d);
        k += ";r" + std::to_string(radical_rows(M, budget_).rows);
        k += ";s" + std::to_string(socle_rows(M, budget_).rows);
        return k;
    }

    Budget budget_;
    std::vector<Module> entries_;
    std::vector<std::string> labels_;
    std::map<std::string, std::vector<int>> buckets_;
};

} // namespace filtral
