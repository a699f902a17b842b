#include "implode/strata.hpp"

#include <algorithm>
#include <cmath>

#include "implode/errors.hpp"
#include "implode/linalg.hpp"

namespace implode {

namespace {

// dim of [L,L] + unipotent radical for the parabolic fixed by the flag.
// The Levi is prod GL(p_i) x G0 with G0 the residual group of the same kind
// on the unpaired middle; [L,L] drops one torus direction per GL block.
int commutator_parabolic_dim(const StratumLabel& label) {
    const int n = label.n;
    std::vector<int> blocks;
    int covered = 0;
    for (std::size_t i = 0; i < label.flag.size(); ++i) {
        blocks.push_back(label.flag[i] - (i == 0 ? 0 : label.flag[i - 1]));
        covered = label.flag[i];
    }
    int levi = 0, levi_comm = 0;
    for (int p : blocks) {
        levi += p * p;
        levi_comm += p * p - 1;
    }
    if (label.kind == GroupKind::A) {
        const int rest = n - covered;  // the final block of the flag (..., n)
        if (rest > 0) {
            levi += rest * rest;
            levi_comm += rest * rest - 1;
        }
        levi -= 1;  // inside SL(n)
        const int unipotent = (n * n - 1 - levi) / 2;
        return unipotent + levi_comm;
    }
    const int middle = n - 2 * covered;
    int g0 = 0, g0_comm = 0;
    if (label.kind == GroupKind::C) {
        g0 = middle * (middle + 1) / 2;
        g0_comm = g0;  // Sp is semisimple (or zero)
    } else {
        g0 = middle * (middle - 1) / 2;
        g0_comm = middle >= 3 ? g0 : 0;  // SO(2) is a torus, SO(<2) trivial
    }
    levi += g0;
    levi_comm += g0_comm;
    const int unipotent = (group_dim(label.kind, n) - levi) / 2;
    return unipotent + levi_comm;
}

}  // namespace

std::vector<int> StratumLabel::block_sizes() const {
    std::vector<int> blocks;
    int prev = 0;
    for (int w : flag) {
        blocks.push_back(w - prev);
        prev = w;
    }
    if (kind == GroupKind::A && n - prev > 0) blocks.push_back(n - prev);
    return blocks;
}

int StratumLabel::complex_dimension() const {
    return stratum_dimension(*this);
}

std::string StratumLabel::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < flag.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(flag[i]);
    }
    if (kind == GroupKind::A) {
        if (!flag.empty()) s += ",";
        s += std::to_string(n);
    }
    s += ")";
    return s;
}

Quiver Decomposition::reconstruct(const DimensionVector& dv, QuiverMode mode) const {
    Quiver q = Quiver::zero(dv, mode);
    for (int i = 0; i < dv.edges(); ++i) {
        const int w_lo = injective_part.dims[i];
        const int w_hi = injective_part.dims[i + 1];
        Matrix block = Matrix::Zero(dv.dims[i + 1], dv.dims[i]);
        block.topLeftCorner(w_hi, w_lo) = injective_part.maps[i];
        if (i + 1 < static_cast<int>(node_bases.size()))
            q.alpha[i] = node_bases[i + 1] * block * node_bases[i].inverse();
        else
            q.alpha[i] = block * node_bases[i].inverse();  // top node basis is the identity
    }
    return q;
}

Decomposition decompose_polystable(const Quiver& q, const SolveOptions& opts) {
    if (q.hyperkahler()) throw ModeError("polystable decomposition applies to symplectic quivers");
    const StabilityVerdict verdict = polystable_test(q, opts);
    if (verdict.status == Stability::not_polystable)
        throw NotPolystable("quiver does not split into zero and injective summands: " +
                            verdict.details);

    const int e = q.dv.edges();
    Decomposition dec;
    if (verdict.splitting) {
        dec.node_bases = verdict.splitting->node_bases;
        dec.injective_part.dims = verdict.splitting->injective_dims;
        dec.zero_part.dims = verdict.splitting->zero_dims;
    } else {  // stable: the whole quiver is the injective summand
        for (int i = 0; i < e; ++i) {
            dec.node_bases.push_back(Matrix::Identity(q.dv.dims[i], q.dv.dims[i]));
            dec.injective_part.dims.push_back(q.dv.dims[i]);
            dec.zero_part.dims.push_back(0);
        }
    }
    dec.injective_part.dims.push_back(q.dv.n());
    dec.zero_part.dims.push_back(0);
    for (int i = 0; i < e; ++i) {
        const int w_lo = dec.injective_part.dims[i];
        const int w_hi = dec.injective_part.dims[i + 1];
        const Matrix full = i + 1 < e
                                ? Matrix(dec.node_bases[i + 1].inverse() * q.alpha[i] * dec.node_bases[i])
                                : Matrix(q.alpha[i] * dec.node_bases[i]);
        dec.injective_part.maps.push_back(full.topLeftCorner(w_hi, w_lo));
        dec.zero_part.maps.push_back(Matrix::Zero(dec.zero_part.dims[i + 1], dec.zero_part.dims[i]));
    }
    return dec;
}

StratumLabel contract_legs(const std::vector<int>& chain_dims, GroupKind kind, int n) {
    StratumLabel label;
    label.kind = kind;
    label.n = n;
    int prev = 0;
    const int cap = kind == GroupKind::A ? n : n / 2;
    for (int d : chain_dims) {
        if (d < prev) throw NotOrdered("chain dimensions must be weakly increasing");
        if (d == 0 || d == prev) continue;
        if (d != n && d > cap)
            throw NotOrdered("chain dimension " + std::to_string(d) + " exceeds the isotropic cap");
        if (d > n) throw NotOrdered("chain dimension exceeds n");
        if (d != n) label.flag.push_back(d);  // the top entry n is implied
        prev = d;
    }
    return label;
}

StratumLabel classify_stratum(const Quiver& q, const SolveOptions& opts) {
    const Decomposition dec = decompose_polystable(q, opts);
    std::vector<int> chain = dec.injective_part.dims;
    if (is_orthosymplectic(q.dv.kind)) chain.pop_back();  // the top C^n is not part of the flag
    return contract_legs(chain, q.dv.kind, q.dv.n());
}

std::vector<StratumLabel> enumerate_strata(GroupKind kind, int n) {
    const int top = kind == GroupKind::A ? n - 1 : n / 2;
    std::vector<StratumLabel> out;
    for (std::uint64_t mask = 0; mask < (1ull << top); ++mask) {
        StratumLabel label;
        label.kind = kind;
        label.n = n;
        for (int v = 1; v <= top; ++v)
            if (mask & (1ull << (v - 1))) label.flag.push_back(v);
        out.push_back(std::move(label));
    }
    std::sort(out.begin(), out.end(), [](const StratumLabel& a, const StratumLabel& b) {
        if (a.flag.size() != b.flag.size()) return a.flag.size() > b.flag.size();
        return a.flag < b.flag;
    });
    return out;
}

int stratum_dimension(const StratumLabel& label) {
    return group_dim(label.kind, label.n) - commutator_parabolic_dim(label);
}

int implosion_dimension(GroupKind kind, int n, QuiverMode mode) {
    if (mode == QuiverMode::hyperkahler) return 2 * (group_dim(kind, n) + torus_rank(kind, n));
    return group_dim(kind, n) - unipotent_dim(kind, n);
}

int flat_space_dim(GroupKind kind, int n, QuiverMode mode) {
    const std::vector<int> dims = full_flag_dims(kind, n);
    const int r = static_cast<int>(dims.size());
    int hom = 0;
    for (int i = 0; i + 1 < r; ++i) hom += dims[i] * dims[i + 1];
    if (mode == QuiverMode::hyperkahler) return hom;  // quaternionic dimension
    if (kind == GroupKind::A) return hom;
    const int m = dims[r - 2];
    const int constraints =
        kind == GroupKind::C ? m * (m - 1) / 2 : m * (m + 1) / 2;
    return hom - constraints;
}

int gauge_group_dim(GroupKind kind, int n) {
    const std::vector<int> dims = full_flag_dims(kind, n);
    int d = 0;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) d += dims[i] * dims[i] - 1;
    return d;
}

}  // namespace implode
