#include "parkfit/kernels.hpp"

#include <cmath>

namespace parkfit {
namespace {

// One PA's contribution to loss and to the shared gradient term
// g = dJ/d(b_i) = 2(p - x) p (1 - p); d and r receive -g.
inline void accumulate_range(const ParamView& params, const PaTriples& pas,
                             std::size_t begin, std::size_t end,
                             Accumulation& acc) {
    for (std::size_t l = begin; l < end; ++l) {
        const std::int32_t i = pas.bat[l];
        const std::int32_t j = pas.def[l];
        const std::int32_t k = pas.park[l];
        const double z = params.b[static_cast<std::size_t>(i)] -
                         params.d[static_cast<std::size_t>(j)] -
                         params.r[static_cast<std::size_t>(k)];
        const double p = 1.0 / (1.0 + std::exp(-z));
        const double e = p - static_cast<double>(pas.x[l]);
        acc.loss += e * e;
        const double g = 2.0 * e * p * (1.0 - p);
        acc.grad_b[static_cast<std::size_t>(i)] += g;
        acc.grad_d[static_cast<std::size_t>(j)] -= g;
        acc.grad_r[static_cast<std::size_t>(k)] -= g;
    }
}

Accumulation make_zero(const ParamView& params) {
    Accumulation acc;
    acc.grad_b.assign(params.b.size(), 0.0);
    acc.grad_d.assign(params.d.size(), 0.0);
    acc.grad_r.assign(params.r.size(), 0.0);
    return acc;
}

void check_bounds(const ParamView& params, const PaTriples& pas) {
    if (pas.n_teams > static_cast<std::int32_t>(params.b.size()) ||
        pas.n_teams > static_cast<std::int32_t>(params.d.size()) ||
        pas.n_parks > static_cast<std::int32_t>(params.r.size()))
        throw DataError("plate-appearance indices exceed parameter vector sizes");
}

}  // namespace

PaTriples make_triples(const Dataset& ds, EventClass target) {
    if (target == EventClass::Other)
        throw Error("make_triples target must be a modeled event");
    PaTriples pas;
    pas.n_teams = ds.n_teams();
    pas.n_parks = ds.n_parks();
    const std::size_t n = ds.plate_appearances.size();
    pas.bat.reserve(n);
    pas.def.reserve(n);
    pas.park.reserve(n);
    pas.x.reserve(n);
    for (const auto& pa : ds.plate_appearances) {
        if (pa.batting_team.index < 0 || pa.batting_team.index >= pas.n_teams ||
            pa.defense_team.index < 0 || pa.defense_team.index >= pas.n_teams ||
            pa.park.index < 0 || pa.park.index >= pas.n_parks)
            throw DataError("plate appearance references an unregistered id");
        pas.bat.push_back(pa.batting_team.index);
        pas.def.push_back(pa.defense_team.index);
        pas.park.push_back(pa.park.index);
        pas.x.push_back(static_cast<std::uint8_t>(binary_outcome(pa, target)));
    }
    return pas;
}

Accumulation accumulate_serial(const ParamView& params, const PaTriples& pas) {
    check_bounds(params, pas);
    Accumulation acc = make_zero(params);
    accumulate_range(params, pas, 0, pas.size(), acc);
    return acc;
}

Accumulation accumulate_blocked(const ParamView& params, const PaTriples& pas) {
    check_bounds(params, pas);
    const std::size_t n = pas.size();
    const std::size_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
    if (n_blocks <= 1) return accumulate_serial(params, pas);

    std::vector<Accumulation> partials(n_blocks);

#pragma omp parallel for schedule(static)
    for (std::size_t blk = 0; blk < n_blocks; ++blk) {
        Accumulation local = make_zero(params);
        const std::size_t begin = blk * kBlockSize;
        const std::size_t end = std::min(begin + kBlockSize, n);
        accumulate_range(params, pas, begin, end, local);
        partials[blk] = std::move(local);
    }

    // Serial combine in block-index order keeps the result independent of
    // the thread count.
    Accumulation acc = make_zero(params);
    for (const auto& part : partials) {
        acc.loss += part.loss;
        for (std::size_t i = 0; i < acc.grad_b.size(); ++i)
            acc.grad_b[i] += part.grad_b[i];
        for (std::size_t i = 0; i < acc.grad_d.size(); ++i)
            acc.grad_d[i] += part.grad_d[i];
        for (std::size_t i = 0; i < acc.grad_r.size(); ++i)
            acc.grad_r[i] += part.grad_r[i];
    }
    return acc;
}

Accumulation accumulate(const ParamView& params, const PaTriples& pas,
                        ExecPath path) {
    return path == ExecPath::Serial ? accumulate_serial(params, pas)
                                    : accumulate_blocked(params, pas);
}

}  // namespace parkfit
