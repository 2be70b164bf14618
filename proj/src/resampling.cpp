#include "dcurve/resampling.hpp"

#include "dcurve/errors.hpp"
#include "dcurve/random.hpp"

#include <boost/random/uniform_int_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dcurve {

double nearest_rank(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw DomainError("quantile of an empty sample");
    const auto size = static_cast<double>(sorted.size());
    // The epsilon absorbs representation error in p (e.g. (1 - 0.95)/2).
    auto rank = static_cast<std::ptrdiff_t>(std::ceil(p * size - 1e-9));
    rank = std::clamp<std::ptrdiff_t>(rank, 1, static_cast<std::ptrdiff_t>(sorted.size()));
    return sorted[static_cast<std::size_t>(rank - 1)];
}

namespace {

void validate(const PredictionSet& data, const BandSpec& spec) {
    if (data.n() < 2) throw DomainError("bootstrap needs at least two records");
    if (spec.replicates < 1) throw DomainError("bootstrap needs at least one replicate");
    if (!(spec.level > 0.0 && spec.level < 1.0)) throw DomainError("band level must be in (0,1)");
}

// Records sorted by descending risk; cuts[k] = number of records with
// risk >= grid point k. Lets each replicate be summarised in O(n + grid).
struct SortedCohort {
    std::vector<std::size_t> order;
    std::vector<int> outcome;  // outcome of order[j]
    std::vector<std::size_t> cuts;

    SortedCohort(const PredictionSet& data, const ThresholdGrid& grid) {
        const auto records = data.records();
        order.resize(records.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return records[a].risk > records[b].risk;
        });
        outcome.reserve(order.size());
        for (auto i : order) outcome.push_back(records[i].outcome);
        for (double t : grid.points()) {
            const auto it = std::partition_point(order.begin(), order.end(),
                                                 [&](std::size_t i) { return records[i].risk >= t; });
            cuts.push_back(static_cast<std::size_t>(it - order.begin()));
        }
    }
};

struct Workspace {
    std::vector<std::int64_t> multiplicity;     // per original record
    std::vector<std::int64_t> selected_prefix;  // per sorted position
    std::vector<std::int64_t> event_prefix;
};

void run_replicate(std::size_t r, const PredictionSet& data, const ThresholdGrid& grid,
                   const SortedCohort& cohort, const BandSpec& spec, Workspace& ws,
                   std::vector<double>& nb_row, std::vector<double>& ppv_row) {
    const std::size_t n = data.n();
    ws.multiplicity.assign(n, 0);
    ws.selected_prefix.assign(n + 1, 0);
    ws.event_prefix.assign(n + 1, 0);

    Engine engine = make_engine(spec.seed, streams::first_replicate + r);
    boost::random::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i < n; ++i) ++ws.multiplicity[pick(engine)];

    for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t m = ws.multiplicity[cohort.order[j]];
        ws.selected_prefix[j + 1] = ws.selected_prefix[j] + m;
        ws.event_prefix[j + 1] = ws.event_prefix[j] + m * cohort.outcome[j];
    }
    const std::int64_t events = ws.event_prefix[n];
    const auto total = static_cast<std::int64_t>(n);

    const auto& points = grid.points();
    nb_row.resize(points.size());
    ppv_row.resize(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        const std::size_t cut = cohort.cuts[k];
        ThresholdConfusion c;
        c.t = points[k];
        c.tp = ws.event_prefix[cut];
        c.fp = ws.selected_prefix[cut] - c.tp;
        c.fn = events - c.tp;
        c.tn = total - events - c.fp;
        nb_row[k] = net_benefit(c);
        ppv_row[k] = c.positives() > 0 ? ppv(c) : std::numeric_limits<double>::quiet_NaN();
    }
}

ReplicateTable allocate(const BandSpec& spec) {
    ReplicateTable table;
    table.nb.resize(spec.replicates);
    table.ppv.resize(spec.replicates);
    return table;
}

} // namespace

ReplicateTable bootstrap_replicates_serial(const PredictionSet& data, const ThresholdGrid& grid,
                                           const BandSpec& spec) {
    validate(data, spec);
    const SortedCohort cohort(data, grid);
    ReplicateTable table = allocate(spec);
    Workspace ws;
    for (std::size_t r = 0; r < spec.replicates; ++r) {
        run_replicate(r, data, grid, cohort, spec, ws, table.nb[r], table.ppv[r]);
    }
    return table;
}

ReplicateTable bootstrap_replicates(const PredictionSet& data, const ThresholdGrid& grid,
                                    const BandSpec& spec) {
    validate(data, spec);
    const SortedCohort cohort(data, grid);
    ReplicateTable table = allocate(spec);
    const auto count = static_cast<std::ptrdiff_t>(spec.replicates);
#pragma omp parallel
    {
        Workspace ws;
#pragma omp for schedule(static)
        for (std::ptrdiff_t r = 0; r < count; ++r) {
            const auto i = static_cast<std::size_t>(r);
            run_replicate(i, data, grid, cohort, spec, ws, table.nb[i], table.ppv[i]);
        }
    }
    return table;
}

CurveBand bands_from_replicates(const ReplicateTable& table, const ThresholdGrid& grid,
                                double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("band level must be in (0,1)");
    if (table.nb.empty()) throw DomainError("no bootstrap replicates");
    const double alpha = (1.0 - level) / 2.0;
    const auto& points = grid.points();

    CurveBand band;
    band.points.reserve(points.size());
    std::vector<double> nb_pool;
    std::vector<double> ppv_pool;
    for (std::size_t k = 0; k < points.size(); ++k) {
        nb_pool.clear();
        ppv_pool.clear();
        for (std::size_t r = 0; r < table.nb.size(); ++r) {
            nb_pool.push_back(table.nb[r][k]);
            const double v = table.ppv[r][k];
            if (!std::isnan(v)) ppv_pool.push_back(v);
        }
        std::sort(nb_pool.begin(), nb_pool.end());
        std::sort(ppv_pool.begin(), ppv_pool.end());

        BandPoint p;
        p.t = points[k];
        p.nb_lower = nearest_rank(nb_pool, alpha);
        p.nb_upper = nearest_rank(nb_pool, 1.0 - alpha);
        p.nb_replicates = nb_pool.size();
        p.ppv_replicates = ppv_pool.size();
        p.ppv_excluded = nb_pool.size() - ppv_pool.size();
        if (!ppv_pool.empty()) {
            p.ppv_lower = nearest_rank(ppv_pool, alpha);
            p.ppv_upper = nearest_rank(ppv_pool, 1.0 - alpha);
        }
        band.points.push_back(p);
    }
    return band;
}

CurveBand bootstrap_bands_serial(const PredictionSet& data, const ThresholdGrid& grid,
                                 const BandSpec& spec) {
    return bands_from_replicates(bootstrap_replicates_serial(data, grid, spec), grid, spec.level);
}

CurveBand bootstrap_bands(const PredictionSet& data, const ThresholdGrid& grid,
                          const BandSpec& spec) {
    return bands_from_replicates(bootstrap_replicates(data, grid, spec), grid, spec.level);
}

} // namespace dcurve
