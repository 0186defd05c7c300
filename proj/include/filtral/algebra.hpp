#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "filtral/budget.hpp"
#include "filtral/matrix.hpp"

namespace filtral {

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
};

struct RelationTerm {
    int coef = 0;
    std::vector<int> arrows; // arrow indices, composed left to right
};

using Relation = std::vector<RelationTerm>; // sum of terms = 0

struct QuiverPresentation {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
    int nilpotency_bound = 10;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// A finite-dimensional algebra over F_p given by structure constants, with a
/// complete set of primitive orthogonal idempotents and, when built from a
/// bound quiver, its presentation. Immutable after construction.
class AlgebraData : public std::enable_shared_from_this<AlgebraData> {
public:
    PrimeField field;
    int dim = 0;
    std::vector<std::string> basis_labels;
    // struct_consts[i][j] = coordinates of b_i * b_j
    std::vector<std::vector<std::vector<int>>> struct_consts;
    std::vector<int> unit_coords;
    std::vector<std::vector<int>> idempotents;
    std::optional<QuiverPresentation> presentation;

    // For quiver algebras: per basis element, the path data.
    std::vector<int> path_source; // vertex index
    std::vector<int> path_target;
    std::vector<int> path_length;
    std::vector<std::vector<int>> basis_paths; // arrow index sequences (empty for trivial paths)

    std::vector<int> multiply(const std::vector<int>& x, const std::vector<int>& y) const
    {
        std::vector<int> out(dim, 0);
        for (int i = 0; i < dim; ++i) {
            if (!x[i])
                continue;
            for (int j = 0; j < dim; ++j) {
                if (!y[j])
                    continue;
                int f = field.mul(x[i], y[j]);
                const auto& c = struct_consts[i][j];
                for (int k = 0; k < dim; ++k)
                    if (c[k])
                        out[k] = field.add(out[k], field.mul(f, c[k]));
            }
        }
        return out;
    }

    /// Matrix of x |-> x * b_m on the right regular module (row convention).
    Mat right_mult_matrix(int m) const
    {
        Mat r(dim, dim);
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                r.at(j, k) = struct_consts[j][m][k];
        return r;
    }

    /// Matrix of x |-> v * x (left multiplication by the element with
    /// coordinates v), still applied to row vectors on the right.
    Mat left_mult_matrix(const std::vector<int>& v) const
    {
        Mat r(dim, dim);
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) {
                if (!v[i])
                    continue;
                const auto& c = struct_consts[i][j];
                for (int k = 0; k < dim; ++k)
                    if (c[k])
                        r.at(j, k) = field.add(r.at(j, k), field.mul(v[i], c[k]));
            }
        return r;
    }

    // Caches (value-deterministic, so thread order does not matter).
    mutable std::mutex cache_mu;
    mutable std::optional<Mat> radical_cache;
    mutable std::shared_ptr<const AlgebraData> opposite_cache;
    mutable std::shared_ptr<void> canonical_cache; // CanonicalModules, see module.hpp
};

class Algebra {
public:
    Algebra() = default;
    explicit Algebra(std::shared_ptr<const AlgebraData> d) : d_(std::move(d)) {}

    const AlgebraData& data() const { return *d_; }
    const AlgebraData* operator->() const { return d_.get(); }
    const std::shared_ptr<const AlgebraData>& ptr() const { return d_; }
    bool valid() const { return d_ != nullptr; }
    bool same(const Algebra& o) const { return d_ == o.d_; }

private:
    std::shared_ptr<const AlgebraData> d_;
};

namespace detail {

inline std::string path_label(const QuiverPresentation& q, const std::vector<int>& arrows)
{
    std::string s;
    for (size_t i = 0; i < arrows.size(); ++i) {
        if (i)
            s += "*";
        s += q.arrows[arrows[i]].name;
    }
    return s;
}

} // namespace detail

/// Builds the bound quiver algebra kQ/I. The basis is the set of nonzero
/// residue classes of paths, computed degree by degree with echelon reduction
/// against the relation ideal. Relations must be length-homogeneous
/// combinations of parallel paths of length >= 2; the arrow ideal must vanish
/// within the declared nilpotency bound.
inline Algebra build_quiver_algebra(const QuiverPresentation& pres, const PrimeField& field,
                                    const Budget& budget = {})
{
    const int nv = static_cast<int>(pres.vertices.size());
    require(nv > 0, ErrorCode::ParseError, "quiver needs at least one vertex");
    require(pres.nilpotency_bound >= 1, ErrorCode::ParseError, "nilpotency bound must be >= 1");
    require(pres.arrows.empty() || pres.nilpotency_bound >= 2, ErrorCode::NonAdmissibleIdeal,
            "arrows cannot lie in an admissible ideal, so bound 1 is impossible");
    {
        std::vector<std::string> names;
        for (const auto& a : pres.arrows) {
            require(a.src >= 0 && a.src < nv && a.tgt >= 0 && a.tgt < nv, ErrorCode::ParseError,
                    "arrow endpoint out of range: " + a.name);
            names.push_back(a.name);
        }
        std::sort(names.begin(), names.end());
        require(std::adjacent_find(names.begin(), names.end()) == names.end(), ErrorCode::ParseError,
                "duplicate arrow name");
    }

    // Validate relations: parallel, homogeneous, length >= 2.
    std::vector<Relation> rels;
    for (const auto& rel : pres.relations) {
        Relation r;
        int src = -1, tgt = -1;
        size_t len = 0;
        for (const auto& term : rel) {
            int c = field.normalize(term.coef);
            if (c == 0)
                continue;
            require(!term.arrows.empty(), ErrorCode::DegenerateRelation, "empty path in relation");
            require(term.arrows.size() >= 2, ErrorCode::DegenerateRelation, "relation path of length < 2");
            for (size_t i = 0; i < term.arrows.size(); ++i) {
                int a = term.arrows[i];
                require(a >= 0 && a < static_cast<int>(pres.arrows.size()), ErrorCode::ParseError,
                        "relation references unknown arrow");
                if (i > 0)
                    require(pres.arrows[term.arrows[i - 1]].tgt == pres.arrows[a].src,
                            ErrorCode::DegenerateRelation, "non-composable path in relation");
            }
            int s = pres.arrows[term.arrows.front()].src;
            int t = pres.arrows[term.arrows.back()].tgt;
            if (src < 0) {
                src = s;
                tgt = t;
                len = term.arrows.size();
            } else {
                require(s == src && t == tgt, ErrorCode::DegenerateRelation,
                        "relation terms are not parallel paths");
                require(term.arrows.size() == len, ErrorCode::DegenerateRelation,
                        "relation mixes path lengths (graded relations only)");
            }
            r.push_back({c, term.arrows});
        }
        if (!r.empty())
            rels.push_back(std::move(r));
    }

    // Arrow indices sorted by name drive the deterministic path order.
    std::vector<int> arrows_by_name(pres.arrows.size());
    for (size_t i = 0; i < arrows_by_name.size(); ++i)
        arrows_by_name[i] = static_cast<int>(i);
    std::sort(arrows_by_name.begin(), arrows_by_name.end(),
              [&](int a, int b) { return pres.arrows[a].name < pres.arrows[b].name; });

    struct DegreeInfo {
        std::vector<std::vector<int>> paths;       // arrow sequences, lex by arrow names
        std::map<std::vector<int>, int> path_index;
        Mat ideal;                                 // rref basis of the ideal span at this degree
        std::vector<int> pivots;                   // dying paths
        std::vector<int> class_paths;              // surviving path indices -> class slots
        std::vector<int> class_of_path;            // path index -> global basis index (-1 if none)
    };

    std::vector<DegreeInfo> degs;

    // Degree 0 = trivial paths, degree 1 = arrows (admissible ideals have no
    // part in degrees < 2).
    int n_basis = nv + static_cast<int>(pres.arrows.size());
    std::vector<std::string> labels;
    std::vector<int> src_of, tgt_of, len_of;
    std::vector<std::vector<int>> paths_of;
    for (int v = 0; v < nv; ++v) {
        labels.push_back("e" + pres.vertices[v]);
        src_of.push_back(v);
        tgt_of.push_back(v);
        len_of.push_back(0);
        paths_of.push_back({});
    }
    {
        DegreeInfo d1;
        for (int a : arrows_by_name)
            d1.paths.push_back({a});
        for (size_t i = 0; i < d1.paths.size(); ++i)
            d1.path_index[d1.paths[i]] = static_cast<int>(i);
        d1.ideal = Mat(0, static_cast<int>(d1.paths.size()));
        d1.class_of_path.assign(d1.paths.size(), -1);
        for (size_t i = 0; i < d1.paths.size(); ++i) {
            d1.class_paths.push_back(static_cast<int>(i));
            d1.class_of_path[i] = nv + static_cast<int>(i);
            int a = d1.paths[i][0];
            labels.push_back(pres.arrows[a].name);
            src_of.push_back(pres.arrows[a].src);
            tgt_of.push_back(pres.arrows[a].tgt);
            len_of.push_back(1);
            paths_of.push_back(d1.paths[i]);
        }
        degs.push_back(DegreeInfo{}); // degree 0 placeholder (no path vectors needed)
        degs.push_back(std::move(d1));
    }

    int stop_degree = pres.arrows.empty() ? 1 : pres.nilpotency_bound + 1;
    for (int d = 2; d <= pres.nilpotency_bound; ++d) {
        const DegreeInfo& prev = degs[d - 1];
        DegreeInfo cur;
        for (const auto& p : prev.paths) {
            int t = pres.arrows[p.back()].tgt;
            for (int a : arrows_by_name) {
                if (pres.arrows[a].src != t)
                    continue;
                auto q = p;
                q.push_back(a);
                cur.path_index[q] = static_cast<int>(cur.paths.size());
                cur.paths.push_back(std::move(q));
            }
        }
        require(static_cast<long>(cur.paths.size()) <= budget.enum_cap, ErrorCode::CapExceeded,
                "free path count exceeds budget at degree " + std::to_string(d));
        if (cur.paths.empty()) {
            stop_degree = d;
            break;
        }
        const int np = static_cast<int>(cur.paths.size());

        // Ideal span at degree d: relations of degree d, plus arrow * (degree
        // d-1 span) and (degree d-1 span) * arrow.
        std::vector<std::vector<int>> gens;
        auto add_gen = [&](std::vector<int>&& v) {
            for (int x : v)
                if (x) {
                    gens.push_back(std::move(v));
                    return;
                }
        };
        for (const auto& rel : rels) {
            if (static_cast<int>(rel[0].arrows.size()) != d)
                continue;
            std::vector<int> v(np, 0);
            for (const auto& term : rel) {
                auto it = cur.path_index.find(term.arrows);
                require(it != cur.path_index.end(), ErrorCode::Internal, "relation path not enumerated");
                v[it->second] = field.add(v[it->second], term.coef);
            }
            add_gen(std::move(v));
        }
        if (d >= 3) {
            for (int r = 0; r < prev.ideal.rows; ++r) {
                for (int a : arrows_by_name) {
                    std::vector<int> left(np, 0), right(np, 0);
                    bool any_left = false, any_right = false;
                    for (int c = 0; c < prev.ideal.cols; ++c) {
                        int coef = prev.ideal.at(r, c);
                        if (!coef)
                            continue;
                        const auto& p = prev.paths[c];
                        if (pres.arrows[a].tgt == pres.arrows[p.front()].src) {
                            std::vector<int> q;
                            q.push_back(a);
                            q.insert(q.end(), p.begin(), p.end());
                            left[cur.path_index.at(q)] = field.add(left[cur.path_index.at(q)], coef);
                            any_left = true;
                        }
                        if (pres.arrows[p.back()].tgt == pres.arrows[a].src) {
                            auto q = p;
                            q.push_back(a);
                            right[cur.path_index.at(q)] = field.add(right[cur.path_index.at(q)], coef);
                            any_right = true;
                        }
                    }
                    if (any_left)
                        add_gen(std::move(left));
                    if (any_right)
                        add_gen(std::move(right));
                }
            }
        }
        Mat span(static_cast<int>(gens.size()), np);
        for (size_t i = 0; i < gens.size(); ++i)
            for (int c = 0; c < np; ++c)
                span.at(static_cast<int>(i), c) = gens[i][c];
        cur.pivots = rref(field, span);
        cur.ideal = Mat(static_cast<int>(cur.pivots.size()), np);
        std::copy(span.a.begin(), span.a.begin() + cur.ideal.a.size(), cur.ideal.a.begin());

        std::vector<bool> dies(np, false);
        for (int c : cur.pivots)
            dies[c] = true;
        cur.class_of_path.assign(np, -1);
        int survivors = 0;
        for (int c = 0; c < np; ++c) {
            if (dies[c])
                continue;
            ++survivors;
            cur.class_paths.push_back(c);
            cur.class_of_path[c] = n_basis + survivors - 1;
            labels.push_back(detail::path_label(pres, cur.paths[c]));
            src_of.push_back(pres.arrows[cur.paths[c].front()].src);
            tgt_of.push_back(pres.arrows[cur.paths[c].back()].tgt);
            len_of.push_back(d);
            paths_of.push_back(cur.paths[c]);
        }
        n_basis += survivors;
        degs.push_back(std::move(cur));
        if (survivors == 0) {
            stop_degree = d;
            break;
        }
        if (d == pres.nilpotency_bound)
            fail(ErrorCode::NonAdmissibleIdeal,
                 "nonzero path classes of length " + std::to_string(d) + " at the nilpotency bound");
    }

    // Normal form of a free path as class coordinates (degree-local).
    auto class_coords = [&](int degree, const std::vector<int>& path) -> std::vector<int> {
        std::vector<int> out(n_basis, 0);
        if (degree >= stop_degree || degree >= static_cast<int>(degs.size()))
            return out;
        const DegreeInfo& di = degs[degree];
        auto it = di.path_index.find(path);
        require(it != di.path_index.end(), ErrorCode::Internal, "path lookup failed");
        std::vector<int> vec(di.paths.size(), 0);
        vec[it->second] = 1;
        for (int r = 0; r < di.ideal.rows; ++r) {
            int pc = di.pivots[r];
            int f = vec[pc];
            if (!f)
                continue;
            for (int c = 0; c < di.ideal.cols; ++c)
                vec[c] = field.sub(vec[c], field.mul(f, di.ideal.at(r, c)));
        }
        for (size_t c = 0; c < vec.size(); ++c)
            if (vec[c])
                out[di.class_of_path[c]] = vec[c];
        return out;
    };

    auto data = std::make_shared<AlgebraData>();
    data->field = field;
    data->dim = n_basis;
    data->basis_labels = labels;
    data->path_source = src_of;
    data->path_target = tgt_of;
    data->path_length = len_of;
    data->basis_paths = paths_of;
    data->presentation = pres;
    data->unit_coords.assign(n_basis, 0);
    for (int v = 0; v < nv; ++v) {
        std::vector<int> e(n_basis, 0);
        e[v] = 1;
        data->idempotents.push_back(e);
        data->unit_coords[v] = 1;
    }

    data->struct_consts.assign(n_basis, std::vector<std::vector<int>>(n_basis, std::vector<int>(n_basis, 0)));
    for (int i = 0; i < n_basis; ++i) {
        for (int j = 0; j < n_basis; ++j) {
            auto& c = data->struct_consts[i][j];
            if (tgt_of[i] != src_of[j])
                continue; // non-composable
            if (len_of[i] == 0) {
                c[j] = 1;
                continue;
            }
            if (len_of[j] == 0) {
                c[i] = 1;
                continue;
            }
            auto p = paths_of[i];
            p.insert(p.end(), paths_of[j].begin(), paths_of[j].end());
            c = class_coords(len_of[i] + len_of[j], p);
        }
    }

    {
        Mat radical(0, n_basis);
        for (int i = nv; i < n_basis; ++i) {
            Mat row(1, n_basis);
            row.at(0, i) = 1;
            radical = vstack(radical, row);
        }
        std::lock_guard<std::mutex> lk(data->cache_mu);
        data->radical_cache = row_space_basis(field, radical);
    }
    return Algebra(data);
}

/// Wraps directly supplied structure constants. Shapes are checked here;
/// algebra axioms are the business of validate_algebra.
inline Algebra make_structure_constant_algebra(const PrimeField& field, int dim,
                                               std::vector<std::vector<std::vector<int>>> table,
                                               std::vector<int> unit,
                                               std::vector<std::vector<int>> idempotents,
                                               std::vector<std::string> labels = {})
{
    require(dim >= 0, ErrorCode::ParseError, "negative dimension");
    require(static_cast<int>(table.size()) == dim, ErrorCode::ParseError, "structure constant table shape");
    for (auto& row : table) {
        require(static_cast<int>(row.size()) == dim, ErrorCode::ParseError, "structure constant table shape");
        for (auto& cell : row) {
            require(static_cast<int>(cell.size()) == dim, ErrorCode::ParseError, "structure constant table shape");
            for (auto& x : cell)
                x = field.normalize(x);
        }
    }
    require(static_cast<int>(unit.size()) == dim, ErrorCode::ParseError, "unit coordinate shape");
    for (auto& x : unit)
        x = field.normalize(x);
    for (auto& e : idempotents) {
        require(static_cast<int>(e.size()) == dim, ErrorCode::ParseError, "idempotent coordinate shape");
        for (auto& x : e)
            x = field.normalize(x);
    }
    auto data = std::make_shared<AlgebraData>();
    data->field = field;
    data->dim = dim;
    data->struct_consts = std::move(table);
    data->unit_coords = std::move(unit);
    data->idempotents = std::move(idempotents);
    if (labels.empty())
        for (int i = 0; i < dim; ++i)
            labels.push_back("b" + std::to_string(i));
    require(static_cast<int>(labels.size()) == dim, ErrorCode::ParseError, "label count");
    data->basis_labels = std::move(labels);
    return Algebra(data);
}

/// Checks associativity, the unit law and the idempotent axioms; returns the
/// list of violations (empty iff valid). Never throws.
inline ValidationReport validate_algebra(const Algebra& A)
{
    ValidationReport rep;
    const auto& d = A.data();
    const int n = d.dim;
    auto coord_vec = [&](int i) {
        std::vector<int> v(n, 0);
        v[i] = 1;
        return v;
    };
    for (int i = 0; i < n && rep.violations.size() < 32; ++i)
        for (int j = 0; j < n && rep.violations.size() < 32; ++j)
            for (int k = 0; k < n; ++k) {
                auto lhs = d.multiply(d.struct_consts[i][j], coord_vec(k));
                auto rhs = d.multiply(coord_vec(i), d.struct_consts[j][k]);
                if (lhs != rhs) {
                    rep.violations.push_back("associativity fails at basis triple (" + d.basis_labels[i] + "," +
                                             d.basis_labels[j] + "," + d.basis_labels[k] + ")");
                    break;
                }
            }
    for (int i = 0; i < n; ++i) {
        auto left = d.multiply(d.unit_coords, coord_vec(i));
        auto right = d.multiply(coord_vec(i), d.unit_coords);
        if (left != coord_vec(i))
            rep.violations.push_back("unit fails on the left of " + d.basis_labels[i]);
        if (right != coord_vec(i))
            rep.violations.push_back("unit fails on the right of " + d.basis_labels[i]);
    }
    std::vector<int> total(n, 0);
    for (size_t r = 0; r < d.idempotents.size(); ++r) {
        for (size_t s = 0; s < d.idempotents.size(); ++s) {
            auto prod = d.multiply(d.idempotents[r], d.idempotents[s]);
            auto expect = r == s ? d.idempotents[r] : std::vector<int>(n, 0);
            if (prod != expect)
                rep.violations.push_back("idempotent axiom fails at pair (" + std::to_string(r) + "," +
                                         std::to_string(s) + ")");
        }
        for (int k = 0; k < n; ++k)
            total[k] = d.field.add(total[k], d.idempotents[r][k]);
    }
    if (!d.idempotents.empty() && total != d.unit_coords)
        rep.violations.push_back("idempotents do not sum to the unit");
    return rep;
}

/// Opposite algebra; op(op(A)) is pointer-identical to A.
inline Algebra opposite_algebra(const Algebra& A)
{
    const auto& d = A.data();
    {
        std::lock_guard<std::mutex> lk(d.cache_mu);
        if (d.opposite_cache)
            return Algebra(d.opposite_cache);
    }
    auto op = std::make_shared<AlgebraData>();
    op->field = d.field;
    op->dim = d.dim;
    op->basis_labels = d.basis_labels;
    op->unit_coords = d.unit_coords;
    op->idempotents = d.idempotents;
    op->path_length = d.path_length;
    op->path_source = d.path_target; // sources and targets swap
    op->path_target = d.path_source;
    op->struct_consts.assign(d.dim, std::vector<std::vector<int>>(d.dim));
    for (int i = 0; i < d.dim; ++i)
        for (int j = 0; j < d.dim; ++j)
            op->struct_consts[i][j] = d.struct_consts[j][i];
    {
        std::lock_guard<std::mutex> lk(d.cache_mu);
        if (d.radical_cache)
            op->radical_cache = d.radical_cache; // same subspace
        op->opposite_cache = A.ptr();
        if (!d.opposite_cache)
            d.opposite_cache = op;
        return Algebra(d.opposite_cache);
    }
}

} // namespace filtral
