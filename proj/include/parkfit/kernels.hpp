#pragma once

#include <cstdint>
#include <vector>

#include "parkfit/types.hpp"

namespace parkfit {

// Structure-of-arrays view of a dataset for one target event: per PA the
// batting/defense/park indices and the binary outcome. Built once per fit.
struct PaTriples {
    std::vector<std::int32_t> bat;
    std::vector<std::int32_t> def;
    std::vector<std::int32_t> park;
    std::vector<std::uint8_t> x;
    std::int32_t n_teams = 0;
    std::int32_t n_parks = 0;

    std::size_t size() const { return bat.size(); }
};

PaTriples make_triples(const Dataset& ds, EventClass target);

struct Accumulation {
    double loss = 0.0;
    std::vector<double> grad_b;
    std::vector<double> grad_d;
    std::vector<double> grad_r;
};

// Parameter vectors only; see ParameterSet in fit.hpp for the tagged version.
struct ParamView {
    const std::vector<double>& b;
    const std::vector<double>& d;
    const std::vector<double>& r;
};

// Reference path: loss and gradients accumulated strictly in dataset order.
Accumulation accumulate_serial(const ParamView& params, const PaTriples& pas);

// Parallel path: the dataset is cut into fixed blocks of kBlockSize PAs.
// Each block accumulates its own partials in dataset order (parallel across
// blocks), and the partials are combined serially in block-index order, so
// the result is bit-identical for every thread count — but not bit-identical
// to the serial path, whose summation order differs.
inline constexpr std::size_t kBlockSize = 16384;
Accumulation accumulate_blocked(const ParamView& params, const PaTriples& pas);

enum class ExecPath { Serial, Blocked };

Accumulation accumulate(const ParamView& params, const PaTriples& pas,
                        ExecPath path);

}  // namespace parkfit
