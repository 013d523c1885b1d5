#include "alignlso/generator.hpp"

#include <set>
#include <vector>

#include "alignlso/errors.hpp"

namespace alignlso {

void GeneratorConfig::validate() const {
    if (d_min < 1 || d_max > 10 || d_min > d_max)
        throw FormatError("generator: d range must satisfy 1 <= d_min <= d_max <= 10");
    if (n_ops_min < 0 || n_ops_min > n_ops_max)
        throw FormatError("generator: n_ops range must satisfy 0 <= n_ops_min <= n_ops_max");
    if (p_unary < 0 || p_unary > 1 || p_const_leaf < 0 || p_const_leaf > 1)
        throw FormatError("generator: probabilities must lie in [0,1]");
    if (int_const_range[0] > int_const_range[1] || float_const_range[0] > float_const_range[1])
        throw FormatError("generator: constant ranges must be non-empty");
}

GeneratorConfig generator_config_from_json(const nlohmann::json& j) {
    GeneratorConfig cfg;
    if (j.contains("d_min")) cfg.d_min = j.at("d_min").get<int>();
    if (j.contains("d_max")) cfg.d_max = j.at("d_max").get<int>();
    if (j.contains("n_ops_min")) cfg.n_ops_min = j.at("n_ops_min").get<int>();
    if (j.contains("n_ops_max")) cfg.n_ops_max = j.at("n_ops_max").get<int>();
    if (j.contains("p_unary")) cfg.p_unary = j.at("p_unary").get<double>();
    if (j.contains("p_const_leaf")) cfg.p_const_leaf = j.at("p_const_leaf").get<double>();
    if (j.contains("int_const_range")) {
        const auto& r = j.at("int_const_range");
        cfg.int_const_range = {r.at(0).get<long long>(), r.at(1).get<long long>()};
    }
    if (j.contains("float_const_range")) {
        const auto& r = j.at("float_const_range");
        cfg.float_const_range = {r.at(0).get<double>(), r.at(1).get<double>()};
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.validate();
    return cfg;
}

nlohmann::json generator_config_to_json(const GeneratorConfig& cfg) {
    return nlohmann::json{{"d_min", cfg.d_min},
                          {"d_max", cfg.d_max},
                          {"n_ops_min", cfg.n_ops_min},
                          {"n_ops_max", cfg.n_ops_max},
                          {"p_unary", cfg.p_unary},
                          {"p_const_leaf", cfg.p_const_leaf},
                          {"int_const_range", cfg.int_const_range},
                          {"float_const_range", cfg.float_const_range},
                          {"seed", cfg.seed}};
}

namespace {

void collect_leaves(Expr& e, std::vector<Expr*>& out) {
    if (e.kind != NodeKind::Op) {
        out.push_back(&e);
        return;
    }
    for (auto& c : e.children) collect_leaves(c, out);
}

OpSymbol pick_op(Rng& rng, int arity) {
    std::vector<OpSymbol> pool;
    for (const auto& info : operator_table())
        if (info.arity == arity) pool.push_back(info.symbol);
    return pool[rng.index(pool.size())];
}

Expr make_leaf_const(const GeneratorConfig& cfg, Rng& rng) {
    const double which = rng.uniform01();
    if (which < 0.4)
        return Expr::make_int(rng.uniform_int(cfg.int_const_range[0], cfg.int_const_range[1]));
    if (which < 0.8)
        return Expr::make_float(rng.uniform(cfg.float_const_range[0], cfg.float_const_range[1]));
    return Expr::make_named(rng.bernoulli(0.5) ? NamedConst::Pi : NamedConst::E);
}

}  // namespace

Expr generate_expr(const GeneratorConfig& cfg, Rng& rng) {
    cfg.validate();
    const int d = static_cast<int>(rng.uniform_int(cfg.d_min, cfg.d_max));
    const int n_ops = static_cast<int>(rng.uniform_int(cfg.n_ops_min, cfg.n_ops_max));

    Expr shape = Expr::make_int(0);
    for (int step = 0; step < n_ops; ++step) {
        std::vector<Expr*> leaves;
        collect_leaves(shape, leaves);
        Expr* target = leaves[rng.index(leaves.size())];
        if (rng.bernoulli(cfg.p_unary))
            *target = Expr::make_op(pick_op(rng, 1), {Expr::make_int(0)});
        else
            *target = Expr::make_op(pick_op(rng, 2), {Expr::make_int(0), Expr::make_int(0)});
    }

    std::vector<Expr*> leaves;
    collect_leaves(shape, leaves);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::set<int> seen;
        for (Expr* leaf : leaves) {
            if (rng.bernoulli(cfg.p_const_leaf)) {
                *leaf = make_leaf_const(cfg, rng);
            } else {
                const int v = static_cast<int>(rng.index(static_cast<std::size_t>(d)));
                *leaf = Expr::make_var(v);
                seen.insert(v);
            }
        }
        if (static_cast<int>(seen.size()) == d) return shape;
    }
    throw GenerationFailed("leaf assignment could not cover all " + std::to_string(d) +
                           " variables within 100 retries");
}

GeneratedCase generate_valid_case(const GeneratorConfig& cfg, int n_points, double lo, double hi,
                                  double y_abs_cap, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Expr e;
        try {
            e = generate_expr(cfg, rng);
        } catch (const GenerationFailed&) {
            continue;
        }
        const int d = max_var_index(e) + 1;
        Eigen::MatrixXd X(n_points, d);
        for (int i = 0; i < n_points; ++i)
            for (int j = 0; j < d; ++j) X(i, j) = rng.uniform(lo, hi);
        DatasetXY raw;
        raw.X = std::move(X);
        raw.y = Eigen::VectorXd::Zero(n_points);
        DatasetXY ds;
        try {
            ds = standardize(raw);
        } catch (const DegenerateColumn&) {
            continue;
        }
        ds.y = eval_rows(e, ds.X);
        if (!ds.y.allFinite()) continue;
        if (ds.y.array().abs().maxCoeff() > y_abs_cap) continue;
        const double mean = ds.y.mean();
        if (std::sqrt((ds.y.array() - mean).square().mean()) < 1e-9) continue;
        ds.source = DataSource::Synthetic;
        GeneratedCase out;
        out.expr = std::move(e);
        out.ds = std::move(ds);
        return out;
    }
    throw GenerationFailed("no valid (expression, dataset) pair within 1000 attempts");
}

}  // namespace alignlso
