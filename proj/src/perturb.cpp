#include "alignlso/perturb.hpp"

#include <algorithm>
#include <cmath>

#include "alignlso/errors.hpp"

namespace alignlso {

const char* kind_name(PerturbationKind k) {
    switch (k) {
        case PerturbationKind::UnarySwap: return "unary_swap";
        case PerturbationKind::BinarySwap: return "binary_swap";
        case PerturbationKind::ConstChange: return "const_change";
        case PerturbationKind::VarSubst: return "var_subst";
    }
    return "?";
}

std::optional<PerturbationKind> kind_from_name(const std::string& name) {
    for (PerturbationKind k : kAllKinds)
        if (name == kind_name(k)) return k;
    return std::nullopt;
}

namespace {

void collect_nodes(Expr& e, std::vector<Expr*>& out) {
    out.push_back(&e);
    for (auto& c : e.children) collect_nodes(c, out);
}

bool swappable_unary(const Expr& n) {
    if (n.kind != NodeKind::Op) return false;
    const auto& info = op_info(n.op);
    return info.arity == 1 && family_members(info.family).size() >= 2;
}

bool is_binary(const Expr& n) { return n.kind == NodeKind::Op && op_info(n.op).arity == 2; }

// ConstFloat exactly 0.0 is ruled out: 1.2 * 0 would leave the tree
// unchanged, breaking the structural-difference contract.
bool changeable_const(const Expr& n) {
    if (n.kind == NodeKind::ConstInt || n.kind == NodeKind::ConstNamed) return true;
    return n.kind == NodeKind::ConstFloat && n.float_value != 0.0;
}

template <class Pred>
std::vector<Expr*> matching_nodes(Expr& root, Pred&& pred) {
    std::vector<Expr*> all;
    collect_nodes(root, all);
    std::vector<Expr*> out;
    for (Expr* n : all)
        if (pred(*n)) out.push_back(n);
    return out;
}

bool var_subst_applicable(const Expr& e, const PerturbOptions& opt) {
    const auto vars = distinct_vars(e);
    if (static_cast<int>(vars.size()) >= 2) return true;
    return opt.allow_new_var && !vars.empty() && max_var_index(e) + 1 <= 9;
}

}  // namespace

std::vector<PerturbationKind> applicable_kinds(const Expr& e, const PerturbOptions& opt) {
    std::vector<PerturbationKind> out;
    Expr copy = e;
    if (!matching_nodes(copy, swappable_unary).empty()) out.push_back(PerturbationKind::UnarySwap);
    if (!matching_nodes(copy, is_binary).empty()) out.push_back(PerturbationKind::BinarySwap);
    if (!matching_nodes(copy, changeable_const).empty())
        out.push_back(PerturbationKind::ConstChange);
    if (var_subst_applicable(e, opt)) out.push_back(PerturbationKind::VarSubst);
    return out;
}

Expr perturb(const Expr& e, PerturbationKind kind, Rng& rng, const PerturbOptions& opt) {
    Expr out = e;
    switch (kind) {
        case PerturbationKind::UnarySwap: {
            auto nodes = matching_nodes(out, swappable_unary);
            if (nodes.empty()) throw NotApplicable("no swappable unary operator");
            Expr* n = nodes[rng.index(nodes.size())];
            auto members = family_members(op_info(n->op).family);
            members.erase(std::remove(members.begin(), members.end(), n->op), members.end());
            n->op = members[rng.index(members.size())];
            return out;
        }
        case PerturbationKind::BinarySwap: {
            auto nodes = matching_nodes(out, is_binary);
            if (nodes.empty()) throw NotApplicable("no binary operator");
            Expr* n = nodes[rng.index(nodes.size())];
            auto members = family_members(OpFamily::Arithmetic);
            members.erase(std::remove(members.begin(), members.end(), n->op), members.end());
            n->op = members[rng.index(members.size())];
            return out;
        }
        case PerturbationKind::ConstChange: {
            auto nodes = matching_nodes(out, changeable_const);
            if (nodes.empty()) throw NotApplicable("no changeable constant");
            Expr* n = nodes[rng.index(nodes.size())];
            if (n->kind == NodeKind::ConstInt) {
                n->int_value += 1;
            } else if (n->kind == NodeKind::ConstNamed) {
                n->named = (n->named == NamedConst::Pi) ? NamedConst::E : NamedConst::Pi;
            } else {
                n->float_value *= 1.2;
            }
            return out;
        }
        case PerturbationKind::VarSubst: {
            if (!var_subst_applicable(out, opt)) throw NotApplicable("fewer than two variables");
            const auto vars = distinct_vars(out);
            const int source = vars[rng.index(vars.size())];
            std::vector<int> targets;
            for (int v : vars)
                if (v != source) targets.push_back(v);
            if (opt.allow_new_var && max_var_index(out) + 1 <= 9)
                targets.push_back(max_var_index(out) + 1);
            if (targets.empty()) throw NotApplicable("no substitution target");
            const int target = targets[rng.index(targets.size())];
            auto occurrences = matching_nodes(
                out, [&](const Expr& n) { return n.kind == NodeKind::Var && n.var_index == source; });
            if (opt.subst_all_occurrences) {
                for (Expr* n : occurrences) n->var_index = target;
            } else {
                occurrences[rng.index(occurrences.size())]->var_index = target;
            }
            return out;
        }
    }
    throw NotApplicable("unknown kind");
}

int TestCase::base_index() const {
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (candidates[i].is_base()) return static_cast<int>(i);
    return -1;
}

TestCase build_test_case(const Expr& base, const DatasetXY& ds, Rng& rng,
                         const PerturbOptions& opt) {
    const Eigen::VectorXd y_base = eval_rows(base, ds.X);
    std::vector<Candidate> variants;
    for (PerturbationKind kind : applicable_kinds(base, opt)) {
        for (int attempt = 0; attempt < 20; ++attempt) {
            Expr v;
            try {
                v = perturb(base, kind, rng, opt);
            } catch (const NotApplicable&) {
                break;
            }
            if (!validity_filter(v, ds.X)) continue;
            const Eigen::VectorXd y_v = eval_rows(v, ds.X);
            if ((y_v - y_base).array().abs().maxCoeff() <= 1e-9) continue;
            variants.push_back(Candidate{std::move(v), kind});
            break;
        }
    }
    if (variants.empty()) throw NoValidVariant("all perturbation kinds dropped out");

    TestCase tc;
    tc.base = base;
    tc.dataset = ds;
    tc.candidates.push_back(Candidate{base, std::nullopt});
    for (auto& v : variants) tc.candidates.push_back(std::move(v));
    for (std::size_t i = tc.candidates.size(); i > 1; --i) {
        const std::size_t j = rng.index(i);
        std::swap(tc.candidates[i - 1], tc.candidates[j]);
    }
    return tc;
}

nlohmann::json test_case_to_json(const TestCase& tc, const std::string& dataset_path) {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& c : tc.candidates)
        cands.push_back({{"expr", to_infix(c.expr)},
                         {"kind", c.is_base() ? "base" : kind_name(*c.kind)}});
    return nlohmann::json{{"id", tc.id},
                          {"K", tc.K()},
                          {"dataset", dataset_path},
                          {"base", to_infix(tc.base)},
                          {"candidates", cands}};
}

}  // namespace alignlso
