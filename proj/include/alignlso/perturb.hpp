#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alignlso/dataset.hpp"
#include "alignlso/expr.hpp"
#include "alignlso/rng.hpp"

#include "json.hpp"

namespace alignlso {

enum class PerturbationKind { UnarySwap, BinarySwap, ConstChange, VarSubst };

inline constexpr std::array<PerturbationKind, 4> kAllKinds{
    PerturbationKind::UnarySwap, PerturbationKind::BinarySwap, PerturbationKind::ConstChange,
    PerturbationKind::VarSubst};

const char* kind_name(PerturbationKind k);
std::optional<PerturbationKind> kind_from_name(const std::string& name);

struct PerturbOptions {
    // var_subst default: replace one occurrence with a variable already in
    // the expression. Both behaviors below are flag switches.
    bool subst_all_occurrences = false;
    bool allow_new_var = false;
};

// Canonical order: unary_swap, binary_swap, const_change, var_subst.
std::vector<PerturbationKind> applicable_kinds(const Expr& e, const PerturbOptions& opt = {});

// Single-node edit, uniform over eligible nodes and replacement choices.
Expr perturb(const Expr& e, PerturbationKind kind, Rng& rng, const PerturbOptions& opt = {});

struct Candidate {
    Expr expr;
    std::optional<PerturbationKind> kind;  // nullopt marks the base

    bool is_base() const { return !kind.has_value(); }
};

struct TestCase {
    std::string id;
    Expr base;
    DatasetXY dataset;
    std::vector<Candidate> candidates;

    int K() const { return static_cast<int>(candidates.size()); }
    int base_index() const;
};

// One variant per applicable kind, each retried up to 20 times for validity
// and a semantic gap above 1e-9 on the case's rows; kinds that keep failing
// are dropped. Candidates (base included) are shuffled at the end.
TestCase build_test_case(const Expr& base, const DatasetXY& ds, Rng& rng,
                         const PerturbOptions& opt = {});

nlohmann::json test_case_to_json(const TestCase& tc, const std::string& dataset_path);

}  // namespace alignlso
