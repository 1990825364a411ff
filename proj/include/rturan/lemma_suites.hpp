#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rturan/graph.hpp"
#include "rturan/semibounded.hpp"

namespace rturan {

struct SuiteResult {
    std::string name;
    std::string statement;
    bool passed = true;
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::vector<std::string> counterexamples;  // first few, human readable
};

struct SuiteOptions {
    int max_vertices = 7;
    /// tau grid: points and host size.
    int tau_grid = 50;
    double tau_n = 1e4;
    /// Patterns up to this size go through the family double-counting suite.
    int family_pattern_vertices = 5;
    std::uint64_t seed = 1;
    std::size_t max_counterexamples = 5;
};

/// Every (S, T, v*, r) with r from 1 to v(F) that is valid for f.
std::vector<SemiBoundedTriple> all_semibounded_triples(const Graph& f);

std::string describe(const Graph& f, const SemiBoundedTriple& t);

SuiteResult suite_removal_recurrences(const std::vector<Graph>& corpus, const SuiteOptions& o);
SuiteResult suite_f_versus_e(const std::vector<Graph>& corpus, const SuiteOptions& o);
SuiteResult suite_f_upper_bounds(const std::vector<Graph>& corpus, const SuiteOptions& o);
SuiteResult suite_threshold_sets(const std::vector<Graph>& corpus, const SuiteOptions& o);
SuiteResult suite_a_lower_bound(const std::vector<Graph>& corpus, const SuiteOptions& o);
SuiteResult suite_exact_degree(const std::vector<Graph>& corpus, const SuiteOptions& o);
SuiteResult suite_apex_in_witnesses(const std::vector<Graph>& corpus, const SuiteOptions& o);
SuiteResult suite_tau_properties(const std::vector<Graph>& corpus, const SuiteOptions& o);
SuiteResult suite_double_counting(const std::vector<Graph>& corpus, const SuiteOptions& o);
SuiteResult suite_multigraph_m2(const SuiteOptions& o);

/// Names accepted by run_lemma_suites, in run order.
const std::vector<std::string>& suite_names();

/// Runs the named suites (all when `only` is empty) over the connected
/// bipartite corpus up to o.max_vertices.
std::vector<SuiteResult> run_lemma_suites(const SuiteOptions& o, const std::vector<std::string>& only = {});

}  // namespace rturan
