#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "netopt/manifest.hpp"
#include "netopt/netopt.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

unsigned default_jobs() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void print_config(const json& j) { std::cout << "config " << j.dump() << std::endl; }

/// Reclassifies any failure while reading inputs as a data error (exit 2).
template <typename F>
auto load_phase(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const netopt::DataError&) {
        throw;
    } catch (const netopt::Error& e) {
        throw netopt::DataError(e.what());
    }
}

std::string env_out_dir() {
    const char* v = std::getenv("NETOPT_OUT_DIR");
    return v == nullptr ? std::string() : std::string(v);
}

struct GenerateArgs {
    std::string model;
    netopt::NodeId n = 1000;
    double p = -1.0;  // resolved per model below
    int m = 3;
    int k_ring = 6;
    double alpha = 0.014;
    double beta = 0.2;
    double wax_dnorm = netopt::kWaxDistanceNorm;
    std::uint64_t seed = 42;
    bool lcc = false;
    std::string out;
    std::string coords_out;
};

int run_generate(const GenerateArgs& a) {
    auto kind = netopt::model_from_tag(a.model);
    if (!kind) throw netopt::BadParams("unknown model '" + a.model + "'");
    netopt::ModelParams mp;
    mp.kind = *kind;
    mp.n = a.n;
    mp.m = a.m;
    mp.k_ring = a.k_ring;
    mp.alpha = a.alpha;
    mp.beta = a.beta;
    mp.wax_dnorm = a.wax_dnorm;
    mp.seed = a.seed;
    mp.p = a.p >= 0.0 ? a.p : (*kind == netopt::ModelKind::Ws ? 0.4 : 0.006);

    json cfg = netopt::model_json(mp);
    cfg["command"] = "generate";
    cfg["seed"] = mp.seed;
    cfg["lcc"] = a.lcc;
    cfg["out"] = a.out;
    if (!a.coords_out.empty()) cfg["coords_out"] = a.coords_out;
    print_config(cfg);

    netopt::Generated gen = netopt::generate(mp);
    const netopt::Graph* g = &gen.graph;
    netopt::LccResult lcc;
    if (a.lcc) {
        lcc = netopt::largest_connected_component(gen.graph);
        g = &lcc.graph;
        std::cout << "lcc retained " << g->num_nodes() << "/" << gen.graph.num_nodes()
                  << " nodes" << std::endl;
    }
    netopt::save_edge_list(*g, a.out);
    if (!a.coords_out.empty()) {
        if (!gen.coords) throw netopt::BadParams("--coords-out is only meaningful for wax");
        if (a.lcc) {
            netopt::Coordinates kept;
            for (netopt::NodeId old : lcc.new_to_old) {
                kept.x.push_back(gen.coords->x[static_cast<std::size_t>(old)]);
                kept.y.push_back(gen.coords->y[static_cast<std::size_t>(old)]);
            }
            netopt::atomic_write_file(a.coords_out, netopt::coordinates_csv(kept));
        } else {
            netopt::atomic_write_file(a.coords_out, netopt::coordinates_csv(*gen.coords));
        }
    }
    std::cout << "wrote " << a.out << " (" << g->num_nodes() << " nodes, " << g->num_edges()
              << " edges)" << std::endl;
    return kExitOk;
}

struct MeasureArgs {
    std::string in;
    int h = 2;
    bool lcc = false;
    std::string out;
};

int run_measure(const MeasureArgs& a) {
    json cfg{{"command", "measure"}, {"in", a.in}, {"h", a.h}, {"lcc", a.lcc}, {"out", a.out}};
    print_config(cfg);

    netopt::Graph g = load_phase([&] { return netopt::load_edge_list(a.in); });
    if (a.lcc) g = netopt::largest_connected_component(g).graph;
    netopt::MeasureVector btw = netopt::betweenness(g);
    netopt::MeasureVector acc = netopt::accessibility(g, a.h);

    std::string csv = "node_id,degree,betweenness,accessibility_h\n";
    for (netopt::NodeId u = 0; u < g.num_nodes(); ++u) {
        csv += std::to_string(u);
        csv += ',';
        csv += std::to_string(g.degree(u));
        csv += ',';
        csv += netopt::fmt_double(btw.values[static_cast<std::size_t>(u)]);
        csv += ',';
        csv += netopt::fmt_double(acc.values[static_cast<std::size_t>(u)]);
        csv += '\n';
    }
    netopt::atomic_write_file(a.out, csv);
    std::cout << "wrote " << a.out << std::endl;
    return kExitOk;
}

struct OptimizeArgs {
    std::string in;
    std::string strategy;
    int h = 2;
    int budget = 50;
    int recompute_every = 1;
    std::uint64_t seed = 42;
    bool lcc = false;
    unsigned threads = default_jobs();
    std::string out;
};

int run_optimize(const OptimizeArgs& a) {
    auto kind = netopt::strategy_from_tag(a.strategy);
    if (!kind) throw netopt::BadParams("unknown strategy '" + a.strategy + "'");
    netopt::StrategyConfig cfg;
    cfg.kind = *kind;
    cfg.n_a = a.budget;
    cfg.h = a.h;
    cfg.recompute_every = a.recompute_every;
    cfg.seed = a.seed;

    json jc = netopt::strategy_json(cfg);
    jc["command"] = "optimize";
    jc["in"] = a.in;
    jc["seed"] = cfg.seed;
    jc["lcc"] = a.lcc;
    jc["threads"] = a.threads;
    jc["out"] = a.out;
    print_config(jc);

    netopt::Graph g = load_phase([&] { return netopt::load_edge_list(a.in); });
    if (a.lcc) g = netopt::largest_connected_component(g).graph;
    netopt::RunResult run = netopt::run_strategy(g, cfg, a.threads);

    std::string csv = "iteration,u,v,aspl_after\n0,,," +
                      netopt::fmt_double(run.trajectory.front()) + "\n";
    for (const auto& e : run.edges) {
        csv += std::to_string(e.iteration);
        csv += ',';
        csv += std::to_string(e.u);
        csv += ',';
        csv += std::to_string(e.v);
        csv += ',';
        csv += netopt::fmt_double(e.aspl_after);
        csv += '\n';
    }
    netopt::atomic_write_file(a.out, csv);
    double var = 100.0 * (run.trajectory.back() - run.trajectory.front()) /
                 run.trajectory.front();
    std::cout << "initial aspl " << netopt::fmt_double(run.trajectory.front())
              << ", final " << netopt::fmt_double(run.trajectory.back()) << " ("
              << netopt::fmt_double(var) << "%)" << std::endl;
    std::cout << "wrote " << a.out << std::endl;
    return kExitOk;
}

struct ExperimentArgs {
    bool paper_defaults = false;
    std::vector<std::string> models;
    std::vector<std::string> strategies;
    netopt::NodeId n = 1000;
    double er_p = 0.006;
    int ba_m = 3;
    int ws_k = 6;
    double ws_p = 0.4;
    double wax_alpha = 0.014;
    double wax_beta = 0.2;
    double wax_dnorm = netopt::kWaxDistanceNorm;
    int instances = 30;
    int budget = 50;
    int h = 2;
    int recompute_every = 1;
    std::uint64_t master_seed = 42;
    unsigned jobs = default_jobs();
    std::string out;
    bool dry_run = false;
};

netopt::ExperimentPlan build_plan(const ExperimentArgs& a) {
    netopt::ExperimentPlan plan;
    plan.instances = a.instances;
    plan.master_seed = a.master_seed;

    std::vector<std::string> model_tags = a.models;
    if (a.paper_defaults || model_tags.empty()) model_tags = {"ba", "er", "ws", "wax"};
    for (const auto& tag : model_tags) {
        auto kind = netopt::model_from_tag(tag);
        if (!kind) throw netopt::BadParams("unknown model '" + tag + "'");
        netopt::ModelParams mp;
        mp.kind = *kind;
        mp.n = a.n;
        switch (*kind) {
            case netopt::ModelKind::Er: mp.p = a.er_p; break;
            case netopt::ModelKind::Ba: mp.m = a.ba_m; break;
            case netopt::ModelKind::Ws:
                mp.k_ring = a.ws_k;
                mp.p = a.ws_p;
                break;
            case netopt::ModelKind::Wax:
                mp.alpha = a.wax_alpha;
                mp.beta = a.wax_beta;
                mp.wax_dnorm = a.wax_dnorm;
                break;
        }
        plan.models.push_back(mp);
    }

    std::vector<std::string> strat_tags = a.strategies;
    if (strat_tags.empty())
        for (netopt::StrategyKind k : netopt::kAllStrategies)
            strat_tags.push_back(netopt::strategy_tag(k));
    for (const auto& tag : strat_tags) {
        auto kind = netopt::strategy_from_tag(tag);
        if (!kind) throw netopt::BadParams("unknown strategy '" + tag + "'");
        netopt::StrategyConfig cfg;
        cfg.kind = *kind;
        cfg.n_a = a.budget;
        cfg.h = a.h;
        cfg.recompute_every = a.recompute_every;
        plan.strategies.push_back(cfg);
    }
    return plan;
}

int run_experiment(const ExperimentArgs& a) {
    std::string out_dir = a.out.empty() ? env_out_dir() : a.out;
    if (out_dir.empty() && !a.dry_run)
        throw netopt::BadParams("no output directory: pass --out or set NETOPT_OUT_DIR");

    netopt::ExperimentPlan plan = build_plan(a);
    netopt::validate_plan(plan);

    json cfg = netopt::plan_manifest(plan);
    cfg["command"] = "experiment";
    cfg["jobs"] = a.jobs;
    cfg["out"] = out_dir;
    cfg["dry_run"] = a.dry_run;
    print_config(cfg);
    if (a.dry_run) return kExitOk;

    const std::size_t total =
        plan.models.size() * plan.strategies.size() * static_cast<std::size_t>(plan.instances);
    std::cerr << "running " << total << " cells on " << a.jobs << " jobs" << std::endl;
    auto progress = [](std::size_t done, std::size_t all) {
        if (done % 50 == 0 || done == all)
            std::cerr << "  " << done << "/" << all << " cells done" << std::endl;
    };
    std::vector<netopt::Trajectory> trajs = netopt::run_plan(plan, a.jobs, progress);

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };
    netopt::atomic_write_file(path("trajectories.csv"), netopt::trajectories_csv(trajs));
    auto rows = netopt::summarize(trajs);
    netopt::atomic_write_file(path("summary.csv"), netopt::summary_csv(rows));
    auto cells = netopt::scatter_data(trajs);
    netopt::atomic_write_file(path("scatter.csv"), netopt::scatter_csv(cells));
    netopt::atomic_write_file(path("correlations.csv"), netopt::correlations_csv(cells));
    netopt::atomic_write_file(path("manifest.json"), netopt::manifest_text(plan));

    for (const auto& r : rows)
        std::cout << r.model << " " << r.strategy << ": initial "
                  << netopt::fmt_double(r.initial_mean) << " +- "
                  << netopt::fmt_double(r.initial_std) << ", variation "
                  << netopt::fmt_double(r.variation_mean) << "% +- "
                  << netopt::fmt_double(r.variation_std) << (r.best ? " [best]" : "")
                  << std::endl;
    std::cout << "wrote " << out_dir << "/{trajectories,summary,scatter,correlations}.csv"
              << " and manifest.json" << std::endl;
    return kExitOk;
}

struct IngestArgs {
    std::string routes;
    std::string airports;
    bool strict = false;
    std::string out;
    std::string labels_out;
    std::string report;
};

int run_ingest(const IngestArgs& a) {
    json cfg{{"command", "ingest-airports"}, {"routes", a.routes},
             {"airports", a.airports},      {"strict", a.strict},
             {"out", a.out},                {"labels_out", a.labels_out},
             {"report", a.report}};
    print_config(cfg);

    netopt::AirportNetwork net =
        load_phase([&] { return netopt::ingest_openflights(a.routes, a.airports, a.strict); });
    netopt::save_edge_list(net.graph, a.out);
    if (!a.labels_out.empty())
        netopt::atomic_write_file(a.labels_out, netopt::airport_labels_csv(net));
    if (!a.report.empty()) {
        const auto& p = net.provenance;
        json rep{{"routes_file", p.routes_file},
                 {"airports_file", p.airports_file},
                 {"total_rows", p.total_rows},
                 {"accepted_rows", p.accepted_rows},
                 {"dropped_rows", p.dropped_rows},
                 {"dropped_missing", p.dropped_missing},
                 {"dropped_self_loop", p.dropped_self_loop},
                 {"dropped_malformed", p.dropped_malformed},
                 {"duplicate_pair_rows", p.duplicate_pair_rows},
                 {"airports_before_lcc", p.airports_before_lcc},
                 {"edges_before_lcc", p.edges_before_lcc},
                 {"lcc_nodes", net.graph.num_nodes()},
                 {"lcc_edges", net.graph.num_edges()}};
        netopt::atomic_write_file(a.report, rep.dump(2) + "\n");
    }
    std::cout << "ingested " << net.graph.num_nodes() << " airports, "
              << net.graph.num_edges() << " links (LCC); dropped "
              << net.provenance.dropped_rows << " of " << net.provenance.total_rows
              << " rows" << std::endl;
    std::cout << "wrote " << a.out << std::endl;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"netopt: reduce a network's average shortest path length by adding edges"};
    app.set_version_flag("--version", NETOPT_VERSION);
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* cg = app.add_subcommand("generate", "Generate a model network (er|ba|ws|wax)");
    cg->add_option("--model", gen.model, "Model kind: er, ba, ws, wax")->required();
    cg->add_option("--n", gen.n, "Node count")->capture_default_str();
    cg->add_option("--p", gen.p, "ER connection / WS rewiring probability (default 0.006 / 0.4)");
    cg->add_option("--m", gen.m, "BA edges per new node")->capture_default_str();
    cg->add_option("--k-ring", gen.k_ring, "WS ring lattice degree")->capture_default_str();
    cg->add_option("--alpha", gen.alpha, "Waxman alpha")->capture_default_str();
    cg->add_option("--beta", gen.beta, "Waxman beta")->capture_default_str();
    cg->add_option("--wax-dnorm", gen.wax_dnorm, "Waxman distance normalization")
        ->capture_default_str();
    cg->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    cg->add_flag("--lcc", gen.lcc, "Emit only the largest connected component");
    cg->add_option("--out", gen.out, "Output edge-list path")->required();
    cg->add_option("--coords-out", gen.coords_out, "Coordinates CSV path (wax only)");

    MeasureArgs mea;
    auto* cm = app.add_subcommand("measure", "Per-node degree/betweenness/accessibility CSV");
    cm->add_option("--in", mea.in, "Input edge-list path")->required();
    cm->add_option("--h", mea.h, "Accessibility walk length")->capture_default_str();
    cm->add_flag("--lcc", mea.lcc, "Measure the largest connected component only");
    cm->add_option("--out", mea.out, "Output CSV path")->required();

    OptimizeArgs opt;
    auto* co = app.add_subcommand("optimize", "Run one edge-addition strategy on a graph");
    co->add_option("--in", opt.in, "Input edge-list path")->required();
    co->add_option("--strategy", opt.strategy,
                   "degree|regular_topology|pref_attachment|betweenness|accessibility1|2|3")
        ->required();
    co->add_option("--h", opt.h, "Accessibility walk length")->capture_default_str();
    co->add_option("--budget", opt.budget, "Number of edges to add")->capture_default_str();
    co->add_option("--recompute-every", opt.recompute_every,
                   "Measure refresh interval (iterations)")
        ->capture_default_str();
    co->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
    co->add_flag("--lcc", opt.lcc, "Optimize the largest connected component only");
    co->add_option("--threads", opt.threads, "Threads for distance sweeps")
        ->capture_default_str();
    co->add_option("--out", opt.out, "Trajectory CSV path (iteration,u,v,aspl_after)")
        ->required();

    ExperimentArgs exp;
    auto* ce = app.add_subcommand("experiment",
                                  "Batch protocol: strategies x models x instances");
    ce->add_flag("--paper-defaults", exp.paper_defaults,
                 "N=1000, ER p=0.006, BA m=3, WS k=6 p=0.4, WAX a=0.014 b=0.2, "
                 "budget 50, 30 instances");
    ce->add_option("--models", exp.models, "Model tags (default: ba,er,ws,wax)")
        ->delimiter(',');
    ce->add_option("--strategies", exp.strategies, "Strategy tags (default: all 7)")
        ->delimiter(',');
    ce->add_option("--n", exp.n, "Node count")->capture_default_str();
    ce->add_option("--er-p", exp.er_p, "ER connection probability")->capture_default_str();
    ce->add_option("--ba-m", exp.ba_m, "BA edges per new node")->capture_default_str();
    ce->add_option("--ws-k", exp.ws_k, "WS ring degree")->capture_default_str();
    ce->add_option("--ws-p", exp.ws_p, "WS rewiring probability")->capture_default_str();
    ce->add_option("--wax-alpha", exp.wax_alpha, "Waxman alpha")->capture_default_str();
    ce->add_option("--wax-beta", exp.wax_beta, "Waxman beta")->capture_default_str();
    ce->add_option("--wax-dnorm", exp.wax_dnorm, "Waxman distance normalization")
        ->capture_default_str();
    ce->add_option("--instances", exp.instances, "Instances per model")->capture_default_str();
    ce->add_option("--budget", exp.budget, "Edges added per run")->capture_default_str();
    ce->add_option("--h", exp.h, "Accessibility walk length")->capture_default_str();
    ce->add_option("--recompute-every", exp.recompute_every,
                   "Measure refresh interval (iterations)")
        ->capture_default_str();
    ce->add_option("--master-seed", exp.master_seed, "Master seed")->capture_default_str();
    ce->add_option("--jobs", exp.jobs, "Worker threads (results identical for any value)")
        ->capture_default_str();
    ce->add_option("--out", exp.out, "Output directory (default $NETOPT_OUT_DIR)");
    ce->add_flag("--dry-run", exp.dry_run, "Print the resolved plan and exit");

    IngestArgs ing;
    auto* ci = app.add_subcommand("ingest-airports",
                                  "Build the airport network from an OpenFlights routes file");
    ci->add_option("--routes", ing.routes, "routes.dat path")->required();
    ci->add_option("--airports", ing.airports, "airports.dat path (optional, adds names)");
    ci->add_flag("--strict", ing.strict, "Treat malformed rows as fatal");
    ci->add_option("--out", ing.out, "Output edge-list path")->required();
    ci->add_option("--labels-out", ing.labels_out, "Node id -> airport code CSV path");
    ci->add_option("--report", ing.report, "Provenance JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cg->parsed()) return run_generate(gen);
        if (cm->parsed()) return run_measure(mea);
        if (co->parsed()) return run_optimize(opt);
        if (ce->parsed()) return run_experiment(exp);
        if (ci->parsed()) return run_ingest(ing);
        std::cerr << "no subcommand" << std::endl;
        return kExitUsage;
    } catch (const netopt::DataError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitRuntime;
    }
}
