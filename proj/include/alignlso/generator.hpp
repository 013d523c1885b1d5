#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "alignlso/dataset.hpp"
#include "alignlso/expr.hpp"
#include "alignlso/rng.hpp"

#include "json.hpp"

namespace alignlso {

struct GeneratorConfig {
    int d_min = 1;
    int d_max = 3;
    int n_ops_min = 2;
    int n_ops_max = 6;
    double p_unary = 0.4;
    double p_const_leaf = 0.25;
    std::array<long long, 2> int_const_range{1, 5};
    std::array<double, 2> float_const_range{0.5, 3.0};
    std::uint64_t seed = 0;

    void validate() const;
};

GeneratorConfig generator_config_from_json(const nlohmann::json& j);
nlohmann::json generator_config_to_json(const GeneratorConfig& cfg);

// Grows a tree by repeatedly replacing a uniformly chosen leaf with an
// operator node, then assigns leaves as variables or constants. Every
// variable index 0..d-1 must appear; leaf assignment is retried up to 100
// times before GenerationFailed.
Expr generate_expr(const GeneratorConfig& cfg, Rng& rng);

// generate_expr repeated until the expression passes validity_filter on a
// freshly sampled standardized input matrix and its outputs stay below
// y_abs_cap; used for corpus and training-pair creation. y is evaluated on
// the standardized rows so the pair stays self-consistent.
struct GeneratedCase {
    Expr expr;
    DatasetXY ds;
};
GeneratedCase generate_valid_case(const GeneratorConfig& cfg, int n_points, double lo, double hi,
                                  double y_abs_cap, Rng& rng);

}  // namespace alignlso
