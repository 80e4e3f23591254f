#include "virmod/vmodule.hpp"

#include <deque>

namespace virmod {

VVec apply_vop(const VDescriptor& v, int i, int idx) {
    VVec out;
    if (const auto* od = std::get_if<OneDim>(&v)) {
        if (idx != 0) throw WindowOverflow("OneDim index out of range");
        if (i == 0 && od->beta != 0) out.emplace(0, od->beta);
        return out;
    }
    if (const auto* sm = std::get_if<ShiftModule>(&v)) {
        if (idx < 0 || idx >= sm->window) throw WindowOverflow("ShiftModule index out of window");
        if (i == 0) {
            // (c - x) x^n = c x^n - x^{n+1}
            if (idx + 1 >= sm->window)
                throw WindowOverflow("ShiftModule window exhausted; enlarge the window");
            if (sm->c != 0) out.emplace(idx, sm->c);
            out.emplace(idx + 1, Scalar(-1));
        } else if (i == 1) {
            // x^n -> (x+1)^n
            for (int j = 0; j <= idx; ++j)
                out.emplace(j, binomial(static_cast<unsigned>(idx), static_cast<unsigned>(j)));
        }
        return out;
    }
    const auto& mm = std::get<MatrixModule>(v);
    if (idx < 0 || idx >= mm.window) throw WindowOverflow("MatrixModule index out of window");
    if (i > mm.r) return out;
    const ExactMatrix& a = mm.actions.at(static_cast<std::size_t>(i));
    for (std::size_t row = 0; row < a.rows(); ++row) {
        const Scalar& c = a(row, static_cast<std::size_t>(idx));
        if (c != 0) out.emplace(static_cast<int>(row), c);
    }
    return out;
}

VVec apply_vop(const VDescriptor& v, int i, const VVec& vec) {
    VVec out;
    for (const auto& [idx, c] : vec) {
        VVec img = apply_vop(v, i, idx);
        for (const auto& [j, a] : img) {
            Scalar& slot = out[j];
            slot += c * a;
            if (slot == 0) out.erase(j);
        }
    }
    return out;
}

VDescriptor twist(const VDescriptor& v, const Scalar& alpha) {
    if (const auto* od = std::get_if<OneDim>(&v)) return OneDim{od->beta + alpha};
    if (const auto* sm = std::get_if<ShiftModule>(&v)) return ShiftModule{sm->c + alpha, sm->window};
    MatrixModule mm = std::get<MatrixModule>(v);
    ExactMatrix& a0 = mm.actions.at(0);
    for (std::size_t i = 0; i < a0.rows(); ++i) a0(i, i) += alpha;
    return mm;
}

namespace {

VVec vvec_sub(VVec a, const VVec& b) {
    for (const auto& [k, c] : b) {
        Scalar& slot = a[k];
        slot -= c;
        if (slot == 0) a.erase(k);
    }
    return a;
}

VVec vvec_scaled(const VVec& a, const Scalar& f) {
    VVec out;
    if (f == 0) return out;
    for (const auto& [k, c] : a) out.emplace(k, c * f);
    return out;
}

}  // namespace

VValidation validate_vdescriptor(const VDescriptor& v) {
    VValidation res;
    res.window = v_window(v);
    const int r = v_rank(v);

    // Bracket relations [Lb_i, Lb_j] = (j-i) Lb_{i+j} on every basis vector
    // where both compositions stay in the window.
    res.brackets_ok = true;
    for (int i = 0; i <= r; ++i) {
        for (int j = i + 1; j <= r + 1; ++j) {  // j = r+1 checks the Lb_{>r} = 0 edge
            for (int idx = 0; idx < res.window; ++idx) {
                try {
                    VVec lhs = vvec_sub(apply_vop(v, i, apply_vop(v, j, idx)),
                                        apply_vop(v, j, apply_vop(v, i, idx)));
                    VVec rhs;
                    if (i + j <= r)
                        rhs = vvec_scaled(apply_vop(v, i + j, idx), Scalar(j - i));
                    if (!vvec_sub(lhs, rhs).empty()) {
                        res.brackets_ok = false;
                        res.failures.push_back("bracket [" + std::to_string(i) + "," +
                                               std::to_string(j) + "] fails on v_" +
                                               std::to_string(idx));
                    }
                } catch (const WindowOverflow&) {
                    // out of honest reach; skip
                }
            }
        }
    }

    // Lb_r column rank on the window (Remark-style injectivity evidence).
    if (v_is_one_dim(v)) {
        res.injectivity_checked = false;
    } else {
        res.injectivity_checked = true;
        std::vector<int> cols;
        ExactMatrix m(static_cast<std::size_t>(res.window), 0);
        std::vector<VVec> images;
        for (int idx = 0; idx < res.window; ++idx) {
            try {
                images.push_back(apply_vop(v, r, idx));
                cols.push_back(idx);
            } catch (const WindowOverflow&) {
            }
        }
        ExactMatrix mat(static_cast<std::size_t>(res.window), images.size());
        for (std::size_t c = 0; c < images.size(); ++c)
            for (const auto& [row, val] : images[c])
                mat(static_cast<std::size_t>(row), c) = val;
        RrefResult rr = rref(mat);
        res.injectivity_ok = (rr.rank == images.size()) && !images.empty();
        if (!res.injectivity_ok)
            res.failures.push_back("Lb_" + std::to_string(r) +
                                   " is not injective on the window (rank " +
                                   std::to_string(rr.rank) + " of " +
                                   std::to_string(images.size()) + ")");
    }

    // Cyclicity evidence: in-window closure of v_0 under all Lb_i.
    SpanBasis<int> span;
    std::deque<VVec> work;
    VVec seed;
    seed.emplace(0, Scalar(1));
    span.insert(seed);
    work.push_back(seed);
    while (!work.empty()) {
        VVec x = work.front();
        work.pop_front();
        for (int i = 0; i <= r; ++i) {
            try {
                VVec y = apply_vop(v, i, x);
                if (span.insert(y)) work.push_back(y);
            } catch (const WindowOverflow&) {
            }
        }
    }
    res.cyclic_dimension = static_cast<int>(span.dimension());
    return res;
}

}  // namespace virmod
