#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "netopt/error.hpp"
#include "netopt/format.hpp"
#include "netopt/generators.hpp"
#include "netopt/graph.hpp"
#include "netopt/rng.hpp"
#include "netopt/strategies.hpp"

namespace netopt {

/// A batch protocol: every strategy is applied to the same `instances`
/// generated graphs of every model. Instance graphs depend only on
/// (master_seed, model tag, instance index), so all strategies start from
/// identical instances.
struct ExperimentPlan {
    std::vector<ModelParams> models;
    std::vector<StrategyConfig> strategies;
    int instances = 30;
    std::uint64_t master_seed = 42;
};

/// ASPL after each of the n_a additions for one (model, strategy, instance)
/// cell, preceded by the initial value; length n_a + 1.
struct Trajectory {
    std::string model;
    std::string strategy;
    int instance = 0;
    std::vector<double> aspl;
    std::uint64_t instance_seed = 0;
    std::uint64_t strategy_seed = 0;
    std::uint64_t initial_fingerprint = 0;  // of the LCC the run started from
    double lcc_fraction = 1.0;              // nodes retained by LCC extraction

    double initial() const { return aspl.front(); }
    double variation_pct() const {
        return 100.0 * (aspl.back() - aspl.front()) / aspl.front();
    }
};

inline void validate_plan(const ExperimentPlan& plan) {
    if (plan.models.empty()) throw BadParams("plan has no models");
    if (plan.strategies.empty()) throw BadParams("plan has no strategies");
    if (plan.instances < 1) throw BadParams("plan needs at least 1 instance");
    for (const auto& s : plan.strategies)
        if (s.n_a != plan.strategies.front().n_a)
            throw BadParams("all strategy budgets in a plan must be equal");
}

inline std::uint64_t instance_seed(const ExperimentPlan& plan, const ModelParams& mp,
                                   int instance) {
    return derive_seed(plan.master_seed, mp.tag(), static_cast<std::uint64_t>(instance));
}

inline std::uint64_t strategy_seed(const ExperimentPlan& plan, const ModelParams& mp,
                                   int instance, StrategyKind kind) {
    return derive_seed(plan.master_seed, mp.tag(), static_cast<std::uint64_t>(instance),
                       strategy_tag(kind));
}

/// Runs every (model, strategy, instance) cell. Cells are independent jobs
/// executed on `jobs` worker threads; each cell is computed sequentially, so
/// results are identical for any `jobs`. The first failing cell aborts the
/// whole plan with its (model, strategy, instance) context attached.
inline std::vector<Trajectory> run_plan(
    const ExperimentPlan& plan, unsigned jobs = 1,
    const std::function<void(std::size_t, std::size_t)>& progress = {}) {
    validate_plan(plan);
    const std::size_t n_models = plan.models.size();
    const std::size_t n_strats = plan.strategies.size();
    const std::size_t n_inst = static_cast<std::size_t>(plan.instances);
    const std::size_t total = n_models * n_strats * n_inst;

    std::vector<Trajectory> out(total);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::atomic<bool> failed{false};
    std::mutex err_mutex;
    std::string err_msg;

    auto worker = [&] {
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= total || failed.load()) return;
            const std::size_t mi = idx / (n_strats * n_inst);
            const std::size_t si = (idx / n_inst) % n_strats;
            const int ii = static_cast<int>(idx % n_inst);
            const ModelParams& base = plan.models[mi];
            StrategyConfig cfg = plan.strategies[si];
            try {
                ModelParams mp = base;
                mp.seed = instance_seed(plan, base, ii);
                Generated gen = generate(mp);
                LccResult lcc = largest_connected_component(gen.graph);
                cfg.seed = strategy_seed(plan, base, ii, cfg.kind);
                RunResult run = run_strategy(lcc.graph, cfg);

                Trajectory& t = out[idx];
                t.model = base.tag();
                t.strategy = strategy_tag(cfg.kind);
                t.instance = ii;
                t.aspl = std::move(run.trajectory);
                t.instance_seed = mp.seed;
                t.strategy_seed = cfg.seed;
                t.initial_fingerprint = lcc.graph.fingerprint();
                t.lcc_fraction = static_cast<double>(lcc.graph.num_nodes()) /
                                 static_cast<double>(gen.graph.num_nodes());
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(err_mutex);
                if (!failed.exchange(true))
                    err_msg = std::string("cell (model=") + base.tag() + ", strategy=" +
                              strategy_tag(cfg.kind) + ", instance=" + std::to_string(ii) +
                              "): " + e.what();
                return;
            }
            std::size_t d = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard<std::mutex> lk(err_mutex);
                progress(d, total);
            }
        }
    };

    const unsigned nw = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
    if (nw == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (unsigned w = 0; w < nw; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw Error(err_msg);
    return out;
}

/// Table-shaped aggregate for one (model, strategy) pair: mean +- sample std
/// of the initial ASPL and of the percentage variation over instances.
struct SummaryRow {
    std::string model;
    std::string strategy;
    int instances = 0;
    double initial_mean = 0.0;
    double initial_std = 0.0;
    double variation_mean = 0.0;
    double variation_std = 0.0;
    bool best = false;  // most negative mean variation within the model
};

namespace detail {

inline std::pair<double, double> mean_sample_std(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    double mean = sum / n;
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

/// Groups trajectories by (model, strategy) into canonical (sorted) order,
/// with instances sorted inside each group; aggregation is therefore
/// invariant to input permutation.
inline std::map<std::pair<std::string, std::string>, std::vector<const Trajectory*>>
group_cells(const std::vector<Trajectory>& trajectories) {
    std::map<std::pair<std::string, std::string>, std::vector<const Trajectory*>> groups;
    for (const auto& t : trajectories)
        groups[{t.model, t.strategy}].push_back(&t);
    for (auto& [key, cells] : groups)
        std::sort(cells.begin(), cells.end(),
                  [](const Trajectory* a, const Trajectory* b) {
                      return a->instance < b->instance;
                  });
    return groups;
}

}  // namespace detail

inline std::vector<SummaryRow> summarize(const std::vector<Trajectory>& trajectories) {
    if (trajectories.empty()) throw EmptyInput("no trajectories to summarize");
    const std::size_t len = trajectories.front().aspl.size();
    for (const auto& t : trajectories)
        if (t.aspl.size() != len)
            throw BadParams("trajectories with mixed budgets cannot be summarized");

    auto groups = detail::group_cells(trajectories);
    std::vector<SummaryRow> rows;
    rows.reserve(groups.size());
    for (const auto& [key, cells] : groups) {
        std::vector<double> initials, variations;
        initials.reserve(cells.size());
        variations.reserve(cells.size());
        for (const Trajectory* t : cells) {
            initials.push_back(t->initial());
            variations.push_back(t->variation_pct());
        }
        SummaryRow row;
        row.model = key.first;
        row.strategy = key.second;
        row.instances = static_cast<int>(cells.size());
        std::tie(row.initial_mean, row.initial_std) = detail::mean_sample_std(initials);
        std::tie(row.variation_mean, row.variation_std) = detail::mean_sample_std(variations);
        rows.push_back(std::move(row));
    }
    // flag the strategy with the most negative mean variation per model
    std::map<std::string, std::size_t> best_idx;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto it = best_idx.find(rows[i].model);
        if (it == best_idx.end() || rows[i].variation_mean < rows[it->second].variation_mean)
            best_idx[rows[i].model] = i;
    }
    for (auto& [model, idx] : best_idx) rows[idx].best = true;
    return rows;
}

/// Per-instance (initial ASPL, variation %) points for one (model, strategy)
/// pair, plus the Pearson correlation between the initial value and the
/// improvement magnitude |variation|. r is NaN when either coordinate has
/// zero variance.
struct ScatterPoint {
    int instance = 0;
    double initial = 0.0;
    double variation_pct = 0.0;
};

struct ScatterCell {
    std::string model;
    std::string strategy;
    std::vector<ScatterPoint> points;
    double pearson_r = 0.0;
};

inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::nan("");
    return sxy / std::sqrt(sxx * syy);
}

inline std::vector<ScatterCell> scatter_data(const std::vector<Trajectory>& trajectories) {
    if (trajectories.empty()) throw EmptyInput("no trajectories");
    auto groups = detail::group_cells(trajectories);
    std::vector<ScatterCell> cells;
    cells.reserve(groups.size());
    for (const auto& [key, group] : groups) {
        if (group.size() < 2)
            throw InsufficientData("scatter_data needs at least 2 instances per cell");
        ScatterCell cell;
        cell.model = key.first;
        cell.strategy = key.second;
        std::vector<double> initials, magnitudes;
        for (const Trajectory* t : group) {
            cell.points.push_back({t->instance, t->initial(), t->variation_pct()});
            initials.push_back(t->initial());
            magnitudes.push_back(std::fabs(t->variation_pct()));
        }
        cell.pearson_r = pearson(initials, magnitudes);
        cells.push_back(std::move(cell));
    }
    return cells;
}

// -- CSV renderings (canonically sorted, byte-stable) -------------------------

inline std::string trajectories_csv(const std::vector<Trajectory>& trajectories) {
    auto groups = detail::group_cells(trajectories);
    std::string out = "model,strategy,instance,iteration,aspl\n";
    for (const auto& [key, cells] : groups)
        for (const Trajectory* t : cells)
            for (std::size_t i = 0; i < t->aspl.size(); ++i) {
                out += t->model;
                out += ',';
                out += t->strategy;
                out += ',';
                out += std::to_string(t->instance);
                out += ',';
                out += std::to_string(i);
                out += ',';
                out += fmt_double(t->aspl[i]);
                out += '\n';
            }
    return out;
}

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out =
        "model,strategy,instances,initial_mean,initial_std,variation_pct_mean,"
        "variation_pct_std,best\n";
    for (const auto& r : rows) {
        out += r.model;
        out += ',';
        out += r.strategy;
        out += ',';
        out += std::to_string(r.instances);
        out += ',';
        out += fmt_double(r.initial_mean);
        out += ',';
        out += fmt_double(r.initial_std);
        out += ',';
        out += fmt_double(r.variation_mean);
        out += ',';
        out += fmt_double(r.variation_std);
        out += ',';
        out += r.best ? '1' : '0';
        out += '\n';
    }
    return out;
}

inline std::string scatter_csv(const std::vector<ScatterCell>& cells) {
    std::string out = "model,strategy,instance,initial,variation_pct\n";
    for (const auto& c : cells)
        for (const ScatterPoint& p : c.points) {
            out += c.model;
            out += ',';
            out += c.strategy;
            out += ',';
            out += std::to_string(p.instance);
            out += ',';
            out += fmt_double(p.initial);
            out += ',';
            out += fmt_double(p.variation_pct);
            out += '\n';
        }
    return out;
}

inline std::string correlations_csv(const std::vector<ScatterCell>& cells) {
    std::string out = "model,strategy,instances,pearson_r\n";
    for (const auto& c : cells) {
        out += c.model;
        out += ',';
        out += c.strategy;
        out += ',';
        out += std::to_string(c.points.size());
        out += ',';
        out += fmt_double(c.pearson_r);
        out += '\n';
    }
    return out;
}

}  // namespace netopt
