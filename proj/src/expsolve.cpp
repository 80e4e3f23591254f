#include "virmod/expsolve.hpp"

#include <set>

namespace virmod {

void ExpPolyStructure::validate() const {
    std::set<Scalar> seen;
    for (const auto& mu : mus) {
        if (mu == 0) throw std::invalid_argument("mu values must be nonzero");
        if (!seen.insert(mu).second)
            throw std::invalid_argument("mu values must be pairwise distinct");
    }
    if (degree_bound < 0) throw std::invalid_argument("degree bound must be nonnegative");
}

std::vector<long> ExpPolyStructure::default_window() const {
    std::vector<long> w;
    const long n = static_cast<long>(mus.size()) * (degree_bound + 1);
    for (long m = 1; m <= n; ++m) w.push_back(m);
    return w;
}

CoefficientTable separate(const ExpPolyStructure& structure, const SampleSet& samples) {
    structure.validate();
    const std::size_t s = structure.mus.size();
    const std::size_t kk = static_cast<std::size_t>(structure.degree_bound) + 1;
    const std::size_t unknowns = s * kk;
    const std::size_t w = samples.window.size();
    if (w < unknowns) throw std::invalid_argument("sample window smaller than s(k+1)");
    if (samples.values.size() != w)
        throw DimensionMismatch("one value vector per window point required");
    const std::size_t dim = samples.values.empty() ? 0 : samples.values.front().size();
    for (const auto& v : samples.values)
        if (v.size() != dim) throw DimensionMismatch("sample vectors differ in length");
    {
        std::set<long> distinct(samples.window.begin(), samples.window.end());
        if (distinct.size() != w) throw std::invalid_argument("window points must be distinct");
    }

    // One shared interpolation matrix, all ambient coordinates augmented at once.
    ExactMatrix aug(w, unknowns + dim);
    for (std::size_t row = 0; row < w; ++row) {
        const long m = samples.window[row];
        const Scalar mq(m);
        for (std::size_t i = 0; i < s; ++i) {
            const Scalar base = pow_int(structure.mus[i], m);
            Scalar mp(1);
            for (std::size_t j = 0; j < kk; ++j) {
                aug(row, i * kk + j) = base * mp;
                mp *= mq;
            }
        }
        for (std::size_t c = 0; c < dim; ++c) aug(row, unknowns + c) = samples.values[row][c];
    }

    RrefResult r = rref(aug);
    std::size_t model_rank = 0;
    for (std::size_t p : r.pivot_cols) {
        if (p >= unknowns)
            throw InconsistentSamples("samples are not an exponential polynomial of this structure");
        ++model_rank;
    }
    if (model_rank < unknowns)
        throw SingularSystem("window makes the interpolation matrix rank-deficient");

    CoefficientTable table(s, std::vector<std::vector<Scalar>>(kk, std::vector<Scalar>(dim, Scalar(0))));
    for (std::size_t row = 0; row < unknowns; ++row) {
        const std::size_t col = r.pivot_cols[row];
        for (std::size_t c = 0; c < dim; ++c)
            table[col / kk][col % kk][c] = r.reduced(row, unknowns + c);
    }
    return table;
}

int component_degree_bound(const TensorDescriptor& d, const TensorElement& elem) {
    return elem.max_exponent() + v_rank(d.v) + 1;
}

namespace {

ExpPolyStructure structure_for(const TensorDescriptor& d, const TensorElement& elem) {
    ExpPolyStructure st;
    for (std::size_t i = 0; i < d.nvars(); ++i) st.mus.push_back(d.factor(i).lambda);
    st.degree_bound = component_degree_bound(d, elem);
    st.validate();  // rejects repeated lambdas
    return st;
}

}  // namespace

std::map<std::pair<std::size_t, int>, TensorElement> all_components(
    const TensorDescriptor& d, const TensorElement& elem, const std::vector<long>& window) {
    ExpPolyStructure st = structure_for(d, elem);

    // Collect L_k(elem) for the whole window and index the coordinate space.
    std::vector<TensorElement> images;
    images.reserve(window.size());
    std::map<TermKey, std::size_t> coord;
    for (long k : window) {
        images.push_back(act_tensor(d, k, elem));
        for (const auto& [key, c] : images.back().terms())
            coord.emplace(key, coord.size());
    }
    // coord was filled in insertion order; rebuild densely and deterministically
    std::size_t idx = 0;
    for (auto& [key, slot] : coord) slot = idx++;

    SampleSet samples;
    samples.window = window;
    for (const auto& img : images) {
        std::vector<Scalar> row(coord.size(), Scalar(0));
        for (const auto& [key, c] : img.terms()) row[coord.at(key)] = c;
        samples.values.push_back(std::move(row));
    }

    CoefficientTable table = separate(st, samples);
    std::map<std::pair<std::size_t, int>, TensorElement> out;
    for (std::size_t i = 0; i < st.mus.size(); ++i)
        for (int j = 0; j <= st.degree_bound; ++j) {
            TensorElement comp(d.nvars());
            for (const auto& [key, slot] : coord) {
                const Scalar& c = table[i][static_cast<std::size_t>(j)][slot];
                if (c != 0) comp.add_term(key.first, key.second, c);
            }
            out.emplace(std::make_pair(i, j), std::move(comp));
        }
    return out;
}

std::map<std::pair<std::size_t, int>, TensorElement> all_components(
    const TensorDescriptor& d, const TensorElement& elem) {
    ExpPolyStructure st = structure_for(d, elem);
    return all_components(d, elem, st.default_window());
}

TensorElement extract_component(const TensorDescriptor& d, const TensorElement& elem,
                                const std::vector<long>& window, std::size_t factor_index,
                                int power) {
    auto comps = all_components(d, elem, window);
    auto it = comps.find({factor_index, power});
    if (it == comps.end()) return TensorElement(d.nvars());  // beyond the degree bound: zero
    return it->second;
}

TensorElement extract_component(const TensorDescriptor& d, const TensorElement& elem,
                                std::size_t factor_index, int power) {
    ExpPolyStructure st = structure_for(d, elem);
    return extract_component(d, elem, st.default_window(), factor_index, power);
}

}  // namespace virmod
