#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reopt/value.hpp"

namespace reopt {

struct ColumnRef {
    std::string source;
    std::string column;

    auto operator<=>(const ColumnRef &) const = default;
    std::string qualified() const { return source + "." + column; }
};

// A scan-time filter local to one data source. UDF predicates apply to the
// whole row; the column field then names only the source.
struct Predicate {
    enum class Form { Equality, Range, Parameterized, Udf };

    ColumnRef column;
    Form form = Form::Equality;
    Value eq_value;                 // Equality
    std::optional<Value> lo, hi;    // Range (absent end = unbounded)
    bool lo_open = false, hi_open = false;
    std::string param_name;         // Parameterized
    std::string udf_name;           // Udf

    bool is_complex() const { return form == Form::Parameterized || form == Form::Udf; }
    std::string display() const;
};

// One equi-join column pair; canonical order is by source name so that
// (a.k = b.k) and (b.k = a.k) are the same edge.
struct JoinPredicate {
    ColumnRef left;
    ColumnRef right;

    void canonicalize() {
        if (right.source < left.source) std::swap(left, right);
    }
    auto operator<=>(const JoinPredicate &) const = default;
    std::string display() const { return left.qualified() + " = " + right.qualified(); }
};

struct DataSourceRef {
    enum class Kind { Base, Intermediate };

    std::string name;
    Kind kind = Kind::Base;
    std::set<std::string> origin;  // base datasets subsumed; empty for base refs

    bool is_base() const { return kind == Kind::Base; }
};

// Output column of a materialized result: carries the base-level column it
// descends from so query rewrites can remap references.
struct SchemaColumn {
    std::string name;
    std::string origin_source;
    std::string origin_column;
    ValueType type = ValueType::Int64;
};

struct Schema {
    std::vector<SchemaColumn> columns;

    std::optional<std::size_t> index_of(const std::string &name) const;
    std::optional<std::size_t> index_of_origin(const std::string &source,
                                               const std::string &column) const;
    // Output name for a new column, prefixing with the origin dataset when the
    // base name is already taken ("c" stays "c", a second "c" becomes "B_c").
    std::string disambiguated_name(const std::string &origin_source,
                                   const std::string &base_name) const;
};

/// The query Q(sigma, D, J): projection list, source set, equi-join set and
/// per-source local predicates. Immutable value type; rewrites return copies.
struct Query {
    std::vector<ColumnRef> projections;
    std::map<std::string, DataSourceRef> sources;
    std::vector<JoinPredicate> joins;  // canonical, deduplicated, sorted
    std::map<std::string, std::vector<Predicate>> local_predicates;

    // Throws when a reference does not resolve, a join is not between two
    // distinct known sources, or the join graph is disconnected.
    void validate() const;

    std::vector<ColumnRef> referenced_columns() const;
    std::string display() const;
};

std::set<std::string> datasets_with_pushable_predicates(const Query &q);

// Single-source query for push-down: d with its local predicates, projecting
// exactly the columns of d the rest of q still references.
Query make_single_source_query(const Query &q, const std::string &dataset);

// Replaces `removed` sources with `replacement`, remapping column references
// through the replacement schema's origin info and dropping joins internal to
// the removed set. Local predicates of removed sources are remapped likewise.
Query substitute_source(const Query &q, const std::set<std::string> &removed,
                        const DataSourceRef &replacement, const Schema &replacement_schema);

// Binds parameterized predicates to fixed values; unknown parameters throw.
Query bind_parameters(const Query &q, const std::map<std::string, Value> &bindings);

}  // namespace reopt
