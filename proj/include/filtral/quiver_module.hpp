#pragma once

#include <map>
#include <string>
#include <vector>

#include "filtral/module.hpp"

namespace filtral {

/// Builds a representation of a bound quiver algebra from vertex dimensions
/// and one matrix per arrow. Arrow matrices are in the internal row
/// convention: d_src x d_tgt, applied as v |-> v * X. The basis of the module
/// is grouped by vertex in vertex order. Throws ValidationFailure if the
/// matrices do not satisfy the relations.
inline Module module_from_arrow_matrices(const Algebra& A, const std::vector<int>& vertex_dims,
                                         const std::map<std::string, Mat>& arrow_mats)
{
    require(A->presentation.has_value(), ErrorCode::ParseError, "algebra has no quiver presentation");
    const auto& q = *A->presentation;
    const auto& F = A->field;
    const int nv = static_cast<int>(q.vertices.size());
    require(static_cast<int>(vertex_dims.size()) == nv, ErrorCode::ParseError, "vertex dimension count");
    std::vector<int> offset(nv + 1, 0);
    for (int v = 0; v < nv; ++v) {
        require(vertex_dims[v] >= 0, ErrorCode::ParseError, "negative vertex dimension");
        offset[v + 1] = offset[v] + vertex_dims[v];
    }
    const int n = offset[nv];

    std::vector<Mat> arrow_blocks; // per arrow index, d_src x d_tgt
    for (const auto& ar : q.arrows) {
        auto it = arrow_mats.find(ar.name);
        Mat X(vertex_dims[ar.src], vertex_dims[ar.tgt]);
        if (it != arrow_mats.end()) {
            require(it->second.rows == vertex_dims[ar.src] && it->second.cols == vertex_dims[ar.tgt],
                    ErrorCode::ParseError, "arrow matrix shape for " + ar.name);
            X = it->second;
            for (auto& x : X.a)
                x = F.normalize(x);
        }
        arrow_blocks.push_back(std::move(X));
    }
    for (const auto& [name, mat] : arrow_mats) {
        (void)mat;
        bool known = false;
        for (const auto& ar : q.arrows)
            if (ar.name == name)
                known = true;
        require(known, ErrorCode::ParseError, "matrix given for unknown arrow " + name);
    }

    // Product of arrow matrices along a path (as a block between the end
    // vertices), then embedded at the right offsets.
    auto path_block = [&](const std::vector<int>& path) -> Mat {
        Mat blk = Mat::identity(vertex_dims[q.arrows[path.front()].src]);
        for (int a : path)
            blk = mul(F, blk, arrow_blocks[a]);
        return blk;
    };
    auto embed = [&](int src_v, int tgt_v, const Mat& blk) -> Mat {
        Mat full(n, n);
        for (int r = 0; r < blk.rows; ++r)
            for (int c = 0; c < blk.cols; ++c)
                full.at(offset[src_v] + r, offset[tgt_v] + c) = blk.at(r, c);
        return full;
    };

    for (const auto& rel : q.relations) {
        Mat acc;
        bool first = true;
        for (const auto& term : rel) {
            if (F.normalize(term.coef) == 0)
                continue;
            Mat b = scale(F, F.normalize(term.coef), path_block(term.arrows));
            acc = first ? b : add(F, acc, b);
            first = false;
        }
        if (!first && !acc.is_zero()) {
            std::string label;
            for (const auto& term : rel)
                label += (label.empty() ? "" : " + ") + detail::path_label(q, term.arrows);
            fail(ErrorCode::ValidationFailure, "matrices violate the relation " + label + " = 0");
        }
    }

    std::vector<Mat> act;
    act.reserve(A->dim);
    for (int b = 0; b < A->dim; ++b) {
        if (A->path_length[b] == 0) {
            Mat e(n, n);
            int v = A->path_source[b];
            for (int r = offset[v]; r < offset[v + 1]; ++r)
                e.at(r, r) = 1;
            act.push_back(std::move(e));
        } else {
            act.push_back(embed(A->path_source[b], A->path_target[b], path_block(A->basis_paths[b])));
        }
    }
    Module M(A, n, std::move(act));
    auto bad = representation_violations(M);
    require(bad.empty(), ErrorCode::ValidationFailure, "not a module over the bound quiver algebra: " + (bad.empty() ? "" : bad.front()));
    return M;
}

} // namespace filtral
