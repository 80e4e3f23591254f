#pragma once

#include <random>

#include "virmod/tensor.hpp"

namespace virmod {

// Deterministic pseudo-random tensor elements for probe/seed sets. All
// randomness flows from the one recorded seed.
inline std::vector<TensorElement> random_elements(std::size_t nvars, int count,
                                                  int max_exponent, int v_bound,
                                                  std::uint64_t seed, int max_terms = 3) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> expo(0, max_exponent);
    std::uniform_int_distribution<int> vdist(0, std::max(0, v_bound - 1));
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<TensorElement> out;
    while (static_cast<int>(out.size()) < count) {
        TensorElement e(nvars);
        const int t = nterms(rng);
        for (int i = 0; i < t; ++i) {
            Monomial m(nvars);
            for (auto& x : m) x = expo(rng);
            int n = num(rng);
            if (n == 0) n = 1;
            e.add_term(m, vdist(rng), Scalar(n, den(rng)));
        }
        if (!e.is_zero()) out.push_back(std::move(e));
    }
    return out;
}

}  // namespace virmod
