#pragma once

#include "etfq/matgf.hpp"

#include <initializer_list>
#include <random>

namespace etfq::testutil {

inline MatGF mat(const FieldCtx& f, std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size(), c = rows.begin()->size();
    MatGF m(f, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long long v : row) m.set(i, j++, f.from_int(v));
        ++i;
    }
    return m;
}

inline IntMat int_mat(std::initializer_list<std::initializer_list<long long>> rows) {
    std::size_t r = rows.size(), c = rows.begin()->size();
    IntMat m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long long v : row) m.set(i, j++, v);
        ++i;
    }
    return m;
}

inline MatGF random_symmetric(const FieldCtx& f, std::size_t n, std::mt19937_64& rng) {
    MatGF m(f, n, n);
    std::uniform_int_distribution<std::uint64_t> dist(0, f.q() - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            felem v = dist(rng);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    return m;
}

}  // namespace etfq::testutil
