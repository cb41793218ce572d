#pragma once
#include "cdgacyc/error.hpp"

namespace cdgacyc {

template <class F>
SparseMatrix operator_matrix(const std::vector<Monomial>& src, const std::vector<Monomial>& tgt, F&& apply) {
    auto idx = index_of(tgt);
    SparseMatrix m(int(tgt.size()), int(src.size()));
    for (size_t j = 0; j < src.size(); ++j) {
        Polynomial img = apply(src[j]);
        for (auto& [mono, c] : img.terms) {
            auto it = idx.find(mono);
            if (it == idx.end()) fail(ErrorKind::Internal, "image monomial outside target basis");
            m.add(it->second, int(j), c);
        }
    }
    return m;
}

}  // namespace cdgacyc
