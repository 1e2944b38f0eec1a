#include "rollframe/cli/runner.hpp"
#include "rollframe/oracle.hpp"
#include "rollframe/zoo.hpp"

#include <cmath>

namespace rollframe::cli {

namespace {

Vec to_vec(const std::vector<double>& v, int n) {
    Vec out = Vec::Zero(n);
    if (v.empty()) {
        out(0) = 1.0;  // default probe vector e_1
        return out;
    }
    for (int i = 0; i < n && i < static_cast<int>(v.size()); ++i) out(i) = v[i];
    return out;
}

ResultRecord run_trace(const RollingSolution& sol, const TimeGrid& grid, const TaskSpec& spec) {
    ResultRecord rec;
    const double t = spec.has_t ? spec.t : grid.front();
    rec.rows = trace_curve(sol, t, grid);
    double length = 0.0;
    for (size_t k = 1; k < rec.rows.size(); ++k)
        length += (rec.rows[k].ambient - rec.rows[k - 1].ambient).norm();
    const Straightness st = straightness(rec.rows);
    rec.summary = {{"trace_length", length},
                   {"straightness_deviation", st.max_deviation},
                   {"is_line", st.is_line ? 1.0 : 0.0}};
    return rec;
}

ResultRecord run_transport(const RollingSolution& sol, const TimeGrid& grid,
                           const TaskSpec& spec) {
    ResultRecord rec;
    const double s = grid.front();
    const Vec v = to_vec(spec.v, sol.dim());
    const double norm0 = apply_transport(sol, s, s, v).ambient.norm();
    double drift_max = 0.0;
    for (int k = 0; k < grid.node_count(); ++k) {
        TraceSample sample = apply_transport(sol, grid.node(k), s, v);
        sample.s = grid.node(k);
        drift_max = std::max(drift_max, std::abs(sample.ambient.norm() - norm0) /
                                            std::max(norm0, 1e-300));
        rec.rows.push_back(std::move(sample));
    }
    rec.summary = {{"norm_drift_max", drift_max}};
    return rec;
}

ResultRecord run_geodesic_check(const RollingSolution& sol, const TimeGrid& grid) {
    ResultRecord rec;
    double residual_max = 0.0;
    double arclength_max = 0.0;
    for (int k = 0; k < grid.node_count(); ++k) {
        const double t = grid.node(k);
        const GeodesicResidual res = geodesic_residual(sol.chart(), sol.curve(), t);
        residual_max = std::max(residual_max, res.general.norm());
        arclength_max = std::max(arclength_max, res.arclength.norm());
        TraceSample sample;
        sample.s = t;
        sample.coords = res.general;
        sample.ambient = sol.chart().jacobian(sol.curve().eval(t)) * res.general;
        rec.rows.push_back(std::move(sample));
    }
    const Straightness st = straightness(trace_curve(sol, grid.front(), grid));
    rec.summary = {{"residual_max", residual_max},
                   {"arclength_residual_max", arclength_max},
                   {"straightness_deviation", st.max_deviation},
                   {"is_line", st.is_line ? 1.0 : 0.0}};
    return rec;
}

ResultRecord run_holonomy(const RollingSolution& sol, const TimeGrid& grid) {
    ResultRecord rec;
    const Holonomy h = holonomy(sol, grid.front(), grid.back());
    if (h.angle) rec.summary.emplace_back("angle", *h.angle);
    for (int i = 0; i < h.matrix.rows(); ++i)
        for (int j = 0; j < h.matrix.cols(); ++j)
            rec.summary.emplace_back("m" + std::to_string(i) + std::to_string(j), h.matrix(i, j));
    return rec;
}

ResultRecord run_oracle_compare(const RollingSolution& sol, const TimeGrid& grid,
                                const TaskSpec& spec) {
    ResultRecord rec;
    const double s = grid.front();
    const double span = grid.back() - grid.front();
    const int osteps = std::max(2, static_cast<int>(std::ceil(span / spec.h_oracle)));
    const TimeGrid ogrid(s, grid.back(), osteps);
    OracleConfig cfg;
    cfg.step = spec.h_oracle;

    const Vec x0 = Vec::Zero(sol.dim());
    const auto dev = develop_direct(sol.chart(), sol.curve(), x0, s, ogrid, cfg);
    const double develop_gap =
        (dev.back().ambient - apply_rolling(sol, grid.back(), s, x0).ambient).norm();

    const Vec v0 = to_vec(spec.v, sol.dim());
    const auto tr = transport_direct(sol.chart(), sol.curve(), v0, s, ogrid, cfg);
    const double transport_gap =
        (tr.back().ambient - apply_transport(sol, grid.back(), s, v0).ambient).norm();

    rec.summary = {{"develop_gap", develop_gap},
                   {"transport_gap", transport_gap},
                   {"h_oracle", spec.h_oracle}};
    return rec;
}

} // namespace

std::vector<ResultRecord> run(const ExperimentConfig& config, const RunOptions& opts) {
    const ZooEntry entry = make_chart(config.manifold_name, config.manifold_params);
    const ChartCurve curve =
        make_curve(entry, config.curve_kind, config.curve_params, config.t0, config.t1);
    const TimeGrid grid(config.t0, config.t1, config.steps);
    const RollingSolution sol = fundamental_solution(entry.chart, curve, grid);

    std::vector<ResultRecord> records;
    for (const TaskSpec& spec : config.tasks) {
        if (opts.oracle_only && spec.type != "oracle_compare") continue;
        try {
            ResultRecord rec;
            if (spec.type == "trace") rec = run_trace(sol, grid, spec);
            else if (spec.type == "transport") rec = run_transport(sol, grid, spec);
            else if (spec.type == "geodesic_check") rec = run_geodesic_check(sol, grid);
            else if (spec.type == "holonomy") rec = run_holonomy(sol, grid);
            else if (spec.type == "oracle_compare") rec = run_oracle_compare(sol, grid, spec);
            rec.id = spec.id;
            rec.type = spec.type;
            rec.output = spec.output;
            rec.dim_domain = entry.chart.dim_domain;
            rec.dim_ambient = entry.chart.dim_ambient;
            for (const auto& [key, value] : rec.summary)
                if (!std::isfinite(value))
                    throw Error("summary value '" + key + "' is not finite");
            records.push_back(std::move(rec));
        } catch (const Error& e) {
            throw Error("task '" + spec.id + "': " + e.what());
        }
    }
    return records;
}

} // namespace rollframe::cli
