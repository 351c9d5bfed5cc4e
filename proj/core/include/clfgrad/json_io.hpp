#ifndef CLFGRAD_JSON_IO_HPP
#define CLFGRAD_JSON_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "clfgrad/families.hpp"
#include "clfgrad/solver.hpp"

namespace clfgrad::io {

inline constexpr int kSchemaVersion = 1;

// Flag/file vocabulary shared by the CLI and the JSON schemas.
std::string to_string(Functional f);
std::string to_string(Variant v);
std::string to_string(SchedulerKind s);
std::string to_string(SolveStatus s);
Functional functional_from_string(const std::string& s);
Variant variant_from_string(const std::string& s);
SchedulerKind scheduler_from_string(const std::string& s);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const std::string& what);

// Problem files: {"schema_version": 1, "n": ..., "Q": optional n x n,
// "family": {"finite": [...]} | {"interval": {"lower": ..., "upper": ...}}}.
// A missing Q defaults to the identity.
nlohmann::json problem_to_json(const MatrixFamily& family,
                               const std::optional<SymMatrix>& q);
ProblemSpec problem_from_json(const nlohmann::json& j);
ProblemSpec load_problem(const std::filesystem::path& path);
void save_problem(const std::filesystem::path& path, const MatrixFamily& family,
                  const std::optional<SymMatrix>& q);

// Solution files echo enough of the configuration to replay the run
// bit-exactly against the same problem file. Residual fields are null when
// the family cannot be certified (interval box over the vertex cap).
struct SolutionData {
    std::string status;
    Eigen::MatrixXd p;
    long iterations = 0;
    long corrections = 0;
    std::optional<double> worst_residual;
    std::optional<double> lambda_min_p;
    double alpha = 1.0;
    double r = 1.0;
    std::string functional;
    std::string variant;
    std::string scheduler;
    std::uint64_t seed = 0;
    long max_iters = 0;
    double feasibility_tol = 0.0;
};

nlohmann::json solution_to_json(const SolutionData& data);
SolutionData solution_from_json(const nlohmann::json& j);
SolutionData load_solution(const std::filesystem::path& path);
void save_solution(const std::filesystem::path& path, const SolutionData& data);

// Candidate matrix for verification or warm starts: either a bare 2-D
// array or any object carrying a "P" field (e.g. a solution file).
Eigen::MatrixXd load_candidate_matrix(const std::filesystem::path& path);

// One newline-delimited JSON record per iteration.
std::string trace_line(const TraceRecord& rec);

}  // namespace clfgrad::io

#endif
