#pragma once

#include <string>

#include <json.hpp>

#include "netopt/experiment.hpp"
#include "netopt/generators.hpp"
#include "netopt/strategies.hpp"
#include "netopt/version.hpp"

namespace netopt {

inline nlohmann::json model_json(const ModelParams& mp) {
    nlohmann::json j;
    j["kind"] = mp.tag();
    j["n"] = mp.n;
    switch (mp.kind) {
        case ModelKind::Er:
            j["p"] = mp.p;
            break;
        case ModelKind::Ba:
            j["m"] = mp.m;
            break;
        case ModelKind::Ws:
            j["k_ring"] = mp.k_ring;
            j["p"] = mp.p;
            break;
        case ModelKind::Wax:
            j["alpha"] = mp.alpha;
            j["beta"] = mp.beta;
            j["dnorm"] = mp.wax_dnorm;
            break;
    }
    return j;
}

inline nlohmann::json strategy_json(const StrategyConfig& cfg) {
    nlohmann::json j;
    j["kind"] = strategy_tag(cfg.kind);
    j["n_a"] = cfg.n_a;
    j["h"] = cfg.h;
    j["recompute_every"] = cfg.recompute_every;
    return j;
}

/// Everything needed to reproduce a plan run bit-for-bit. Deliberately free of
/// timestamps and worker counts: two runs with identical manifests produce
/// identical output files.
inline nlohmann::json plan_manifest(const ExperimentPlan& plan) {
    nlohmann::json j;
    j["tool"] = "netopt";
    j["version"] = NETOPT_VERSION;
    j["master_seed"] = plan.master_seed;
    j["instances"] = plan.instances;
    j["models"] = nlohmann::json::array();
    for (const auto& m : plan.models) j["models"].push_back(model_json(m));
    j["strategies"] = nlohmann::json::array();
    for (const auto& s : plan.strategies) j["strategies"].push_back(strategy_json(s));
    j["seed_rule"] =
        "instance_seed = derive(master_seed, model_tag, instance); "
        "strategy_seed = derive(master_seed, model_tag, instance, strategy_tag); "
        "derive folds each component into the parent with one SplitMix64 round "
        "(strings hashed with FNV-1a)";
    j["preprocessing"] =
        "largest connected component extracted before every run; retained node "
        "fraction recorded per trajectory";
    j["variation_definition"] =
        "variation_pct = 100*(aspl[n_a]-aspl[0])/aspl[0]; scatter improvement = "
        "|variation_pct|";
    j["outputs"] = {"trajectories.csv", "summary.csv", "scatter.csv",
                    "correlations.csv", "manifest.json"};
    return j;
}

inline std::string manifest_text(const ExperimentPlan& plan) {
    return plan_manifest(plan).dump(2) + "\n";
}

}  // namespace netopt
