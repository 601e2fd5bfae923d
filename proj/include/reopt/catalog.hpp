#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "reopt/gk_sketch.hpp"
#include "reopt/histogram.hpp"
#include "reopt/hll_sketch.hpp"
#include "reopt/query.hpp"

namespace reopt {

struct StatsConfig {
    double gk_eps = 0.01;
    int hll_p = 14;
    std::size_t histogram_buckets = 100;
    // When set, collectors also keep exact distinct sets so estimates can be
    // replaced by ground truth (used to isolate planning from sketch noise).
    bool exact_distinct = false;
};

/// Per-column statistics: GK quantile sketch + HLL distinct counter, with the
/// equi-height histogram materialized from the sketch on demand.
class ColumnStats {
public:
    ColumnStats() = default;
    ColumnStats(double gk_eps, int hll_p) : gk_(gk_eps), hll_(hll_p) {}

    void add(const Value &v);
    static ColumnStats merge(const ColumnStats &a, const ColumnStats &b);

    uint64_t count() const { return count_; }
    uint64_t total_bytes() const { return total_bytes_; }
    double avg_width() const { return count_ ? static_cast<double>(total_bytes_) / count_ : 8.0; }
    double distinct_estimate() const;
    const GKSketch &gk() const { return gk_; }
    const HLLSketch &hll() const { return hll_; }
    const Histogram &histogram(std::size_t buckets) const;

    void enable_exact_tracking() { exact_values_ = std::make_shared<std::set<Value>>(); }
    bool has_exact() const { return exact_values_ != nullptr; }

    void serialize(std::vector<uint8_t> &out) const;
    static ColumnStats deserialize(const uint8_t *data, std::size_t size, std::size_t &offset);

private:
    GKSketch gk_{0.01};
    HLLSketch hll_{14};
    uint64_t count_ = 0;
    uint64_t total_bytes_ = 0;
    std::shared_ptr<std::set<Value>> exact_values_;
    mutable std::optional<Histogram> histogram_;
    mutable std::size_t histogram_buckets_ = 0;
};

struct TableStats {
    std::string dataset;
    uint64_t row_count = 0;
    uint64_t byte_size = 0;
    std::map<std::string, ColumnStats> columns;

    double avg_row_bytes() const {
        return row_count ? static_cast<double>(byte_size) / static_cast<double>(row_count) : 0.0;
    }
};

struct IndexRegistry {
    std::set<std::pair<std::string, std::string>> entries;

    bool has(const std::string &dataset, const std::string &column) const {
        return entries.count({dataset, column}) > 0;
    }
};

/// Statistics store. Base-dataset statistics are registered at load; filtered
/// and intermediate statistics registered later shadow them without deleting
/// the originals, so static baselines and the dynamic strategy plan from the
/// same starting state.
class Catalog {
public:
    void put_base(TableStats stats);
    void register_updated(const DataSourceRef &source, TableStats stats);

    bool has(const std::string &source) const;
    const TableStats &table(const std::string &source) const;
    const ColumnStats &column(const std::string &source, const std::string &column) const;

    // Base view: pre-shadowing statistics only.
    const TableStats &base_table(const std::string &source) const;
    bool has_base(const std::string &source) const;
    const std::map<std::string, TableStats> &base_tables() const { return base_; }

    IndexRegistry &indexes() { return indexes_; }
    const IndexRegistry &indexes() const { return indexes_; }

    void save(const std::string &dir) const;
    static Catalog load(const std::string &dir);

private:
    std::map<std::string, TableStats> base_;
    std::map<std::string, TableStats> overlay_;
    IndexRegistry indexes_;
};

// One-pass statistics build over in-memory rows (column name -> values).
TableStats build_table_stats(const std::string &dataset, const StatsConfig &cfg,
                             const std::map<std::string, std::vector<Value>> &columns,
                             uint64_t row_count, uint64_t byte_size);

}  // namespace reopt
