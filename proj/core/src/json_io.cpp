#include "clfgrad/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace clfgrad::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(path.string() + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) fail("write to " + path.string() + " failed");
}

void check_schema_version(const json& j, const std::string& what) {
    if (!j.contains("schema_version")) fail(what + ": missing schema_version");
    if (!j["schema_version"].is_number_integer() ||
        j["schema_version"].get<int>() != kSchemaVersion) {
        fail(what + ": unsupported schema_version");
    }
}

}  // namespace

std::string to_string(Functional f) {
    switch (f) {
        case Functional::SquaredPositivePart: return "sqnorm";
        case Functional::MaxEigenvalue: return "lambdamax";
    }
    fail("unknown functional");
}

std::string to_string(Variant v) {
    switch (v) {
        case Variant::Plain: return "plain";
        case Variant::Projected: return "projected";
    }
    fail("unknown variant");
}

std::string to_string(SchedulerKind s) {
    switch (s) {
        case SchedulerKind::RoundRobin: return "roundrobin";
        case SchedulerKind::Randomized: return "random";
    }
    fail("unknown scheduler");
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return "solved";
        case SolveStatus::MaxItersReached: return "max_iters_reached";
        case SolveStatus::DegeneracyStall: return "degeneracy_stall";
    }
    fail("unknown status");
}

Functional functional_from_string(const std::string& s) {
    if (s == "sqnorm") return Functional::SquaredPositivePart;
    if (s == "lambdamax") return Functional::MaxEigenvalue;
    throw std::invalid_argument("unknown functional '" + s + "' (expected sqnorm or lambdamax)");
}

Variant variant_from_string(const std::string& s) {
    if (s == "plain") return Variant::Plain;
    if (s == "projected") return Variant::Projected;
    throw std::invalid_argument("unknown variant '" + s + "' (expected plain or projected)");
}

SchedulerKind scheduler_from_string(const std::string& s) {
    if (s == "roundrobin") return SchedulerKind::RoundRobin;
    if (s == "random") return SchedulerKind::Randomized;
    throw std::invalid_argument("unknown scheduler '" + s + "' (expected roundrobin or random)");
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) fail(what + ": expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array() || j[0].empty()) fail(what + ": rows must be non-empty arrays");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            fail(what + ": ragged rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_number()) fail(what + ": non-numeric entry");
            m(i, c) = cell.get<double>();
        }
    }
    return m;
}

json problem_to_json(const MatrixFamily& family, const std::optional<SymMatrix>& q) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = family_dim(family);
    if (q) j["Q"] = matrix_to_json(q->mat());
    if (const auto* finite = std::get_if<FiniteFamily>(&family)) {
        json members = json::array();
        for (const auto& a : finite->matrices()) members.push_back(matrix_to_json(a));
        j["family"] = json{{"finite", std::move(members)}};
    } else {
        const auto& box = std::get<IntervalFamily>(family);
        j["family"] = json{{"interval", json{{"lower", matrix_to_json(box.lower())},
                                             {"upper", matrix_to_json(box.upper())}}}};
    }
    return j;
}

ProblemSpec problem_from_json(const json& j) {
    if (!j.is_object()) fail("problem: expected a JSON object");
    check_schema_version(j, "problem");
    if (!j.contains("n") || !j["n"].is_number_integer()) fail("problem: missing integer n");
    const int n = j["n"].get<int>();
    if (n < 1) fail("problem: n must be positive");
    if (!j.contains("family") || !j["family"].is_object()) {
        fail("problem: missing family object");
    }
    const json& fam = j["family"];

    std::optional<MatrixFamily> family;
    if (fam.contains("finite")) {
        const json& members = fam["finite"];
        if (!members.is_array() || members.empty()) {
            fail("problem: family.finite must be a non-empty array");
        }
        std::vector<Eigen::MatrixXd> mats;
        mats.reserve(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) {
            mats.push_back(
                matrix_from_json(members[i], "problem: family.finite[" + std::to_string(i) + "]"));
        }
        family = FiniteFamily(std::move(mats));
    } else if (fam.contains("interval")) {
        const json& box = fam["interval"];
        if (!box.is_object() || !box.contains("lower") || !box.contains("upper")) {
            fail("problem: family.interval needs lower and upper");
        }
        family = IntervalFamily(matrix_from_json(box["lower"], "problem: family.interval.lower"),
                                matrix_from_json(box["upper"], "problem: family.interval.upper"));
    } else {
        fail("problem: family must contain finite or interval");
    }
    if (family_dim(*family) != n) fail("problem: family dimension disagrees with n");

    SymMatrix q = SymMatrix::identity(n);
    if (j.contains("Q")) {
        const Eigen::MatrixXd qm = matrix_from_json(j["Q"], "problem: Q");
        if ((qm - qm.transpose()).norm() > 1e-12 * (1.0 + qm.norm())) {
            fail("problem: Q must be symmetric");
        }
        q = SymMatrix(qm);
    }
    return ProblemSpec(std::move(*family), std::move(q));
}

ProblemSpec load_problem(const std::filesystem::path& path) {
    return problem_from_json(read_json_file(path));
}

void save_problem(const std::filesystem::path& path, const MatrixFamily& family,
                  const std::optional<SymMatrix>& q) {
    write_text_file(path, problem_to_json(family, q).dump(2) + "\n");
}

json solution_to_json(const SolutionData& data) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["status"] = data.status;
    j["P"] = matrix_to_json(data.p);
    j["iterations"] = data.iterations;
    j["corrections"] = data.corrections;
    j["worst_residual"] = data.worst_residual ? json(*data.worst_residual) : json(nullptr);
    j["lambda_min_P"] = data.lambda_min_p ? json(*data.lambda_min_p) : json(nullptr);
    j["config"] = json{{"alpha", data.alpha},
                       {"r", data.r},
                       {"functional", data.functional},
                       {"variant", data.variant},
                       {"scheduler", data.scheduler},
                       {"seed", data.seed},
                       {"max_iters", data.max_iters},
                       {"feasibility_tol", data.feasibility_tol}};
    return j;
}

SolutionData solution_from_json(const json& j) {
    if (!j.is_object()) fail("solution: expected a JSON object");
    check_schema_version(j, "solution");
    SolutionData data;
    try {
        data.status = j.at("status").get<std::string>();
        data.p = matrix_from_json(j.at("P"), "solution: P");
        data.iterations = j.at("iterations").get<long>();
        data.corrections = j.at("corrections").get<long>();
        if (j.contains("worst_residual") && !j["worst_residual"].is_null()) {
            data.worst_residual = j["worst_residual"].get<double>();
        }
        if (j.contains("lambda_min_P") && !j["lambda_min_P"].is_null()) {
            data.lambda_min_p = j["lambda_min_P"].get<double>();
        }
        const json& cfg = j.at("config");
        data.alpha = cfg.at("alpha").get<double>();
        data.r = cfg.at("r").get<double>();
        data.functional = cfg.at("functional").get<std::string>();
        data.variant = cfg.at("variant").get<std::string>();
        data.scheduler = cfg.at("scheduler").get<std::string>();
        data.seed = cfg.at("seed").get<std::uint64_t>();
        data.max_iters = cfg.at("max_iters").get<long>();
        data.feasibility_tol = cfg.at("feasibility_tol").get<double>();
    } catch (const json::exception& e) {
        fail(std::string("solution: ") + e.what());
    }
    return data;
}

SolutionData load_solution(const std::filesystem::path& path) {
    return solution_from_json(read_json_file(path));
}

void save_solution(const std::filesystem::path& path, const SolutionData& data) {
    write_text_file(path, solution_to_json(data).dump(2) + "\n");
}

Eigen::MatrixXd load_candidate_matrix(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    if (j.is_array()) return matrix_from_json(j, "candidate matrix");
    if (j.is_object() && j.contains("P")) return matrix_from_json(j["P"], "candidate matrix P");
    fail(path.string() + ": expected a 2-D array or an object with a P field");
}

std::string trace_line(const TraceRecord& rec) {
    json j;
    j["k"] = rec.k;
    j["index"] = rec.index;
    j["v"] = rec.v_value;
    j["step_size"] = rec.step_size;
    j["grad_norm"] = rec.grad_norm;
    j["correction"] = rec.was_correction;
    j["degenerate_perturbation"] = rec.was_degenerate_perturbation;
    return j.dump();
}

}  // namespace clfgrad::io
