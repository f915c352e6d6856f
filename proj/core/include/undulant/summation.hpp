#pragma once

#include <cstddef>

namespace undulant {

/// Pairwise (cascade) sum of term(0..n-1). The split points depend only on n, so the
/// rounding pattern is reproducible across runs and thread counts.
template <class Term>
double pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
    const std::size_t n = end - begin;
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t k = begin; k < end; ++k) s += term(k);
        return s;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

template <class Term>
double pairwise_sum(std::size_t n, const Term& term) {
    return pairwise_sum(std::size_t{0}, n, term);
}

}  // namespace undulant
