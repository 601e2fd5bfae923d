#include "reopt/query.hpp"

#include <algorithm>
#include <sstream>

namespace reopt {

std::string Predicate::display() const {
    switch (form) {
        case Form::Equality:
            return column.qualified() + " = " + to_display(eq_value);
        case Form::Range: {
            std::string s;
            if (lo && hi)
                s = column.qualified() + " BETWEEN " + to_display(*lo) + " AND " + to_display(*hi);
            else if (lo)
                s = column.qualified() + (lo_open ? " > " : " >= ") + to_display(*lo);
            else if (hi)
                s = column.qualified() + (hi_open ? " < " : " <= ") + to_display(*hi);
            return s;
        }
        case Form::Parameterized:
            return column.qualified() + " = $" + param_name;
        case Form::Udf:
            return udf_name + "(" + column.source + ")";
    }
    return "";
}

std::optional<std::size_t> Schema::index_of(const std::string &name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    return std::nullopt;
}

std::optional<std::size_t> Schema::index_of_origin(const std::string &source,
                                                   const std::string &column) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].origin_source == source && columns[i].origin_column == column) return i;
    }
    return std::nullopt;
}

std::string Schema::disambiguated_name(const std::string &origin_source,
                                       const std::string &base_name) const {
    if (!index_of(base_name)) return base_name;
    return origin_source + "_" + base_name;
}

std::vector<ColumnRef> Query::referenced_columns() const {
    std::vector<ColumnRef> refs = projections;
    for (const JoinPredicate &j : joins) {
        refs.push_back(j.left);
        refs.push_back(j.right);
    }
    for (const auto &[src, preds] : local_predicates) {
        for (const Predicate &p : preds) {
            if (p.form != Predicate::Form::Udf) refs.push_back(p.column);
        }
    }
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    return refs;
}

void Query::validate() const {
    if (sources.empty()) throw Error("query has no sources");
    for (const ColumnRef &c : referenced_columns()) {
        if (!sources.count(c.source)) {
            std::string known;
            for (const auto &[name, ref] : sources) known += (known.empty() ? "" : ", ") + name;
            throw Error("unresolved column " + c.qualified() + " (sources: " + known + ")");
        }
    }
    for (const auto &[src, preds] : local_predicates) {
        if (!sources.count(src)) throw Error("predicates on unknown source " + src);
    }
    for (const JoinPredicate &j : joins) {
        if (j.left.source == j.right.source) {
            throw Error("join predicate within a single source: " + j.display());
        }
        if (!sources.count(j.left.source) || !sources.count(j.right.source)) {
            throw Error("join references unknown source: " + j.display());
        }
    }

    // Connectivity: every source reachable through join edges.
    std::map<std::string, std::string> parent;
    for (const auto &[name, ref] : sources) parent[name] = name;
    auto find = [&](std::string x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const JoinPredicate &j : joins) {
        parent[find(j.left.source)] = find(j.right.source);
    }
    std::map<std::string, std::vector<std::string>> components;
    for (const auto &[name, ref] : sources) components[find(name)].push_back(name);
    if (components.size() > 1) {
        std::ostringstream msg;
        msg << "join graph is disconnected:";
        for (const auto &[root, members] : components) {
            msg << " {";
            for (std::size_t i = 0; i < members.size(); ++i) msg << (i ? "," : "") << members[i];
            msg << "}";
        }
        throw Error(msg.str());
    }
}

std::string Query::display() const {
    std::ostringstream out;
    out << "SELECT ";
    for (std::size_t i = 0; i < projections.size(); ++i) {
        out << (i ? ", " : "") << projections[i].qualified();
    }
    out << " FROM ";
    bool first = true;
    for (const auto &[name, ref] : sources) {
        out << (first ? "" : ", ") << name;
        first = false;
    }
    std::vector<std::string> conjs;
    for (const JoinPredicate &j : joins) conjs.push_back(j.display());
    for (const auto &[src, preds] : local_predicates) {
        for (const Predicate &p : preds) conjs.push_back(p.display());
    }
    if (!conjs.empty()) {
        out << " WHERE ";
        for (std::size_t i = 0; i < conjs.size(); ++i) out << (i ? " AND " : "") << conjs[i];
    }
    return out.str();
}

std::set<std::string> datasets_with_pushable_predicates(const Query &q) {
    std::set<std::string> result;
    for (const auto &[src, preds] : q.local_predicates) {
        if (preds.empty()) continue;
        bool complex = std::any_of(preds.begin(), preds.end(),
                                   [](const Predicate &p) { return p.is_complex(); });
        if (preds.size() > 1 || complex) result.insert(src);
    }
    return result;
}

Query make_single_source_query(const Query &q, const std::string &dataset) {
    auto src_it = q.sources.find(dataset);
    if (src_it == q.sources.end()) throw Error("unknown source " + dataset);
    auto pred_it = q.local_predicates.find(dataset);
    if (pred_it == q.local_predicates.end() || pred_it->second.empty()) {
        throw Error("source " + dataset + " has no local predicates to push down");
    }

    Query out;
    out.sources.emplace(dataset, src_it->second);
    out.local_predicates[dataset] = pred_it->second;

    // Project the columns of `dataset` the remaining query still needs:
    // its own projections and join keys, not the pushed-down predicates.
    std::set<ColumnRef> needed;
    for (const ColumnRef &c : q.projections) {
        if (c.source == dataset) needed.insert(c);
    }
    for (const JoinPredicate &j : q.joins) {
        if (j.left.source == dataset) needed.insert(j.left);
        if (j.right.source == dataset) needed.insert(j.right);
    }
    out.projections.assign(needed.begin(), needed.end());
    if (out.projections.empty()) {
        throw Error("push-down of " + dataset + " would project no columns");
    }
    return out;
}

namespace {

ColumnRef remap_ref(const ColumnRef &c, const std::set<std::string> &removed,
                    const DataSourceRef &replacement, const Schema &schema) {
    if (!removed.count(c.source)) return c;
    auto idx = schema.index_of_origin(c.source, c.column);
    if (!idx) {
        throw Error("replacement " + replacement.name + " does not expose column " + c.qualified());
    }
    return ColumnRef{replacement.name, schema.columns[*idx].name};
}

}  // namespace

Query substitute_source(const Query &q, const std::set<std::string> &removed,
                        const DataSourceRef &replacement, const Schema &replacement_schema) {
    for (const std::string &r : removed) {
        if (!q.sources.count(r)) throw Error("substituted source " + r + " not in query");
    }

    Query out;
    for (const auto &[name, ref] : q.sources) {
        if (!removed.count(name)) out.sources.emplace(name, ref);
    }
    out.sources.emplace(replacement.name, replacement);

    for (const ColumnRef &c : q.projections) {
        out.projections.push_back(remap_ref(c, removed, replacement, replacement_schema));
    }

    for (const JoinPredicate &j : q.joins) {
        bool l_in = removed.count(j.left.source) > 0;
        bool r_in = removed.count(j.right.source) > 0;
        if (l_in && r_in) continue;  // internal to the contracted set
        JoinPredicate nj{remap_ref(j.left, removed, replacement, replacement_schema),
                         remap_ref(j.right, removed, replacement, replacement_schema)};
        nj.canonicalize();
        out.joins.push_back(nj);
    }
    std::sort(out.joins.begin(), out.joins.end());
    out.joins.erase(std::unique(out.joins.begin(), out.joins.end()), out.joins.end());

    for (const auto &[src, preds] : q.local_predicates) {
        if (preds.empty()) continue;
        for (const Predicate &p : preds) {
            Predicate np = p;
            if (p.form == Predicate::Form::Udf) {
                // UDFs see whole rows; only the source name moves.
                if (removed.count(np.column.source)) np.column.source = replacement.name;
            } else {
                np.column = remap_ref(p.column, removed, replacement, replacement_schema);
            }
            out.local_predicates[np.column.source].push_back(np);
        }
    }

    out.validate();
    return out;
}

Query bind_parameters(const Query &q, const std::map<std::string, Value> &bindings) {
    Query out = q;
    for (auto &[src, preds] : out.local_predicates) {
        for (Predicate &p : preds) {
            if (p.form != Predicate::Form::Parameterized) continue;
            auto it = bindings.find(p.param_name);
            if (it == bindings.end()) throw Error("unbound parameter $" + p.param_name);
            p.form = Predicate::Form::Equality;
            p.eq_value = it->second;
        }
    }
    return out;
}

}  // namespace reopt
