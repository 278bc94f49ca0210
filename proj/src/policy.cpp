#include "brachx/policy.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace brachx {

namespace {

NumericPolicy load_from_env() {
    NumericPolicy p;
    if (const char* path = std::getenv("BRACHX_NUM_POLICY")) {
        p = load_policy_file(path);
    }
    return p;
}

NumericPolicy& mutable_policy() {
    static NumericPolicy p = load_from_env();
    return p;
}

}  // namespace

const NumericPolicy& policy() { return mutable_policy(); }

void set_policy(const NumericPolicy& p) { mutable_policy() = p; }

NumericPolicy load_policy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("numeric policy file not readable: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    NumericPolicy p;
    for (auto& [key, value] : j.items()) {
        if (key == "algebraic_tol") p.algebraic_tol = value.get<double>();
        else if (key == "unitarity_tol") p.unitarity_tol = value.get<double>();
        else if (key == "closure_tol") p.closure_tol = value.get<double>();
        else if (key == "rank_tol") p.rank_tol = value.get<double>();
        else if (key == "cluster_tol") p.cluster_tol = value.get<double>();
        else if (key == "branch_tol") p.branch_tol = value.get<double>();
        else if (key == "ode_tol") p.ode_tol = value.get<double>();
        else if (key == "unitary_refine_tol") p.unitary_refine_tol = value.get<double>();
        else throw std::invalid_argument("unknown numeric policy key: " + key);
    }
    return p;
}

std::string policy_to_json(const NumericPolicy& p) {
    nlohmann::json j{
        {"algebraic_tol", p.algebraic_tol},
        {"unitarity_tol", p.unitarity_tol},
        {"closure_tol", p.closure_tol},
        {"rank_tol", p.rank_tol},
        {"cluster_tol", p.cluster_tol},
        {"branch_tol", p.branch_tol},
        {"ode_tol", p.ode_tol},
        {"unitary_refine_tol", p.unitary_refine_tol},
    };
    return j.dump();
}

}  // namespace brachx
