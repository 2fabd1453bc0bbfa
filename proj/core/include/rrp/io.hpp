#pragma once

#include <string>

#include "rrp/controlled.hpp"
#include "rrp/solver.hpp"

namespace rrp {

/// Formats a double with 17 significant digits (round-trip exact, byte-stable
/// across runs and thread counts).
std::string format_double(double v);

// ---- CSV paths: header "t,x0,x1,...", one row per grid point ----

std::string path_to_csv(const GridPath<Vec>& p);
GridPath<Vec> path_from_csv(const std::string& text);
void save_path_csv(const GridPath<Vec>& p, const std::string& filename);
GridPath<Vec> load_path_csv(const std::string& filename);

// ---- JSON reduced rough paths ----

/// Schema rrp.reduced_rough_path.v1: alpha, grid, path, second_level_steps.
/// Per-step storage is Chen-consistent by construction; on load each step is
/// validated symmetric to 1e-12 and stored exactly symmetric.
std::string rough_path_to_json(const ReducedRoughPath& r);
ReducedRoughPath rough_path_from_json(const std::string& text);
void save_rough_path(const ReducedRoughPath& r, const std::string& filename);
ReducedRoughPath load_rough_path(const std::string& filename);

/// FNV-1a hash of the canonical serialization; guards controlled paths
/// against cross-base loading.
std::string content_hash(const ReducedRoughPath& r);

// ---- JSON controlled paths (solution kind) ----

std::string controlled_to_json(const SolutionPath& c);
/// Fails with BaseMismatch when the stored base hash does not match `base`.
SolutionPath controlled_from_json(const std::string& text,
                                  const std::shared_ptr<const ReducedRoughPath>& base);

// ---- dense second-level table validation ----

/// Result of checking an externally supplied dense pairwise S table
/// (schema rrp.second_level_table.v1: alpha, grid, path, pairs=[{i,j,s}])
/// against the reduced Chen relation on every triple present in the table.
struct ChenValidation {
    bool ok = true;
    double max_defect = 0.0;
    std::size_t arg_i = 0, arg_u = 0, arg_j = 0;
    std::size_t triples_checked = 0;
    std::string message;
};

ChenValidation validate_dense_second_level(const std::string& json_text, double tol = 1e-10);

// ---- solve reports ----

std::string solve_report_to_json(const SolveReport& report);

}  // namespace rrp
