#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "clfgrad/json_io.hpp"
#include "support.hpp"

using namespace clfgrad;
using nlohmann::json;
using testsupport::fresh_tmpdir;
using testsupport::write_file;

namespace {

Eigen::MatrixXd m2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("enum vocabularies round-trip") {
    for (auto f : {Functional::SquaredPositivePart, Functional::MaxEigenvalue}) {
        CHECK(io::functional_from_string(io::to_string(f)) == f);
    }
    for (auto v : {Variant::Plain, Variant::Projected}) {
        CHECK(io::variant_from_string(io::to_string(v)) == v);
    }
    for (auto s : {SchedulerKind::RoundRobin, SchedulerKind::Randomized}) {
        CHECK(io::scheduler_from_string(io::to_string(s)) == s);
    }
    CHECK(io::to_string(SolveStatus::Solved) == "solved");
    CHECK(io::to_string(SolveStatus::MaxItersReached) == "max_iters_reached");
    CHECK(io::to_string(SolveStatus::DegeneracyStall) == "degeneracy_stall");
    CHECK_THROWS_AS(io::functional_from_string("frobnorm"), std::invalid_argument);
    CHECK_THROWS_AS(io::variant_from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(io::scheduler_from_string("cyclic"), std::invalid_argument);
}

TEST_CASE("matrix json round-trip") {
    const Eigen::MatrixXd m = m2(1.5, -2.25, 0.0, 1e-17);
    const Eigen::MatrixXd back = io::matrix_from_json(io::matrix_to_json(m), "test");
    CHECK((back - m).norm() == 0.0);

    CHECK_THROWS(io::matrix_from_json(json::array(), "test"));
    CHECK_THROWS(io::matrix_from_json(json::parse("[[1,2],[3]]"), "test"));
    CHECK_THROWS(io::matrix_from_json(json::parse("[[1,\"x\"]]"), "test"));
    CHECK_THROWS(io::matrix_from_json(json::parse("{\"a\":1}"), "test"));
}

TEST_CASE("problem files round-trip") {
    const auto dir = fresh_tmpdir("jsonio");

    // Finite family with explicit Q.
    const MatrixFamily finite(FiniteFamily({m2(-1, 0.5, 0, -2), m2(-3, 0, 1, -1)}));
    const SymMatrix q(m2(2, 0.5, 0.5, 1));
    io::save_problem(dir / "finite.json", finite, q);
    const ProblemSpec loaded = io::load_problem(dir / "finite.json");
    const auto& fam = std::get<FiniteFamily>(loaded.family());
    REQUIRE(fam.size() == 2);
    CHECK(fam[0].isApprox(m2(-1, 0.5, 0, -2)));
    CHECK(fam[1].isApprox(m2(-3, 0, 1, -1)));
    CHECK((loaded.q().mat() - q.mat()).norm() == 0.0);

    // Interval family without Q: defaults to the identity.
    const MatrixFamily box(IntervalFamily(m2(-2, 0, 0, -2), m2(-1, 1, 0, -1)));
    io::save_problem(dir / "box.json", box, std::nullopt);
    const ProblemSpec loaded_box = io::load_problem(dir / "box.json");
    const auto& ib = std::get<IntervalFamily>(loaded_box.family());
    CHECK(ib.lower().isApprox(m2(-2, 0, 0, -2)));
    CHECK(ib.upper().isApprox(m2(-1, 1, 0, -1)));
    CHECK((loaded_box.q().mat() - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("problem files are validated") {
    const auto dir = fresh_tmpdir("jsonio_bad");
    auto expect_throw = [&](const std::string& name, const std::string& text) {
        write_file(dir / name, text);
        CHECK_THROWS_AS(io::load_problem(dir / name), std::exception);
    };

    expect_throw("missing.json", "");
    expect_throw("not_object.json", "[1,2]");
    expect_throw("no_version.json", R"({"n":1,"family":{"finite":[[[-1]]]}})");
    expect_throw("bad_version.json",
                 R"({"schema_version":2,"n":1,"family":{"finite":[[[-1]]]}})");
    expect_throw("no_n.json", R"({"schema_version":1,"family":{"finite":[[[-1]]]}})");
    expect_throw("no_family.json", R"({"schema_version":1,"n":1})");
    expect_throw("empty_finite.json", R"({"schema_version":1,"n":1,"family":{"finite":[]}})");
    expect_throw("bad_union.json",
                 R"({"schema_version":1,"n":1,"family":{"polytope":[[[-1]]]}})");
    expect_throw("n_mismatch.json",
                 R"({"schema_version":1,"n":2,"family":{"finite":[[[-1]]]}})");
    expect_throw("ragged.json",
                 R"({"schema_version":1,"n":2,"family":{"finite":[[[-1,0],[0]]]}})");
    expect_throw("interval_missing_upper.json",
                 R"({"schema_version":1,"n":1,"family":{"interval":{"lower":[[-1]]}}})");
    expect_throw("interval_lower_above_upper.json",
                 R"({"schema_version":1,"n":1,"family":{"interval":{"lower":[[1]],"upper":[[-1]]}}})");
    expect_throw("asymmetric_q.json",
                 R"({"schema_version":1,"n":2,"Q":[[1,1],[0,1]],"family":{"finite":[[[-1,0],[0,-1]]]}})");
    expect_throw("indefinite_q.json",
                 R"({"schema_version":1,"n":1,"Q":[[-1]],"family":{"finite":[[[-1]]]}})");
}

TEST_CASE("solution files round-trip") {
    const auto dir = fresh_tmpdir("jsonio_sol");
    io::SolutionData data;
    data.status = "solved";
    data.p = m2(2.5, 0.25, 0.25, 3.5);
    data.iterations = 1234;
    data.corrections = 56;
    data.worst_residual = -0.25;
    data.lambda_min_p = 2.4;
    data.alpha = 0.5;
    data.r = 2.0;
    data.functional = "lambdamax";
    data.variant = "projected";
    data.scheduler = "random";
    data.seed = 0xDEADBEEFULL;
    data.max_iters = 777;
    data.feasibility_tol = 1e-12;

    io::save_solution(dir / "sol.json", data);
    const io::SolutionData back = io::load_solution(dir / "sol.json");
    CHECK(back.status == data.status);
    CHECK((back.p - data.p).norm() == 0.0);
    CHECK(back.iterations == data.iterations);
    CHECK(back.corrections == data.corrections);
    CHECK(back.worst_residual == data.worst_residual);
    CHECK(back.lambda_min_p == data.lambda_min_p);
    CHECK(back.alpha == data.alpha);
    CHECK(back.r == data.r);
    CHECK(back.functional == data.functional);
    CHECK(back.variant == data.variant);
    CHECK(back.scheduler == data.scheduler);
    CHECK(back.seed == data.seed);
    CHECK(back.max_iters == data.max_iters);
    CHECK(back.feasibility_tol == data.feasibility_tol);

    // Null residual fields survive the round trip as empty optionals.
    data.worst_residual.reset();
    data.lambda_min_p.reset();
    io::save_solution(dir / "sol_null.json", data);
    const io::SolutionData back_null = io::load_solution(dir / "sol_null.json");
    CHECK_FALSE(back_null.worst_residual.has_value());
    CHECK_FALSE(back_null.lambda_min_p.has_value());

    // Serialization is deterministic.
    CHECK(io::solution_to_json(data).dump(2) == io::solution_to_json(data).dump(2));
}

TEST_CASE("candidate matrix loading") {
    const auto dir = fresh_tmpdir("jsonio_cand");
    write_file(dir / "bare.json", "[[2.5]]");
    CHECK(io::load_candidate_matrix(dir / "bare.json")(0, 0) == 2.5);

    write_file(dir / "object.json", R"({"status":"solved","P":[[1.5,0],[0,2.5]]})");
    const Eigen::MatrixXd p = io::load_candidate_matrix(dir / "object.json");
    CHECK(p(0, 0) == 1.5);
    CHECK(p(1, 1) == 2.5);

    write_file(dir / "neither.json", R"({"status":"solved"})");
    CHECK_THROWS(io::load_candidate_matrix(dir / "neither.json"));
}

TEST_CASE("trace lines") {
    TraceRecord rec;
    rec.k = 3;
    rec.index = -1;
    rec.v_value = 0.25;
    rec.step_size = 3.0;
    rec.grad_norm = 0.5;
    rec.was_correction = true;
    rec.was_degenerate_perturbation = false;

    const std::string line = io::trace_line(rec);
    const json j = json::parse(line);
    CHECK(j["k"] == 3);
    CHECK(j["index"] == -1);
    CHECK(j["v"] == 0.25);
    CHECK(j["step_size"] == 3.0);
    CHECK(j["grad_norm"] == 0.5);
    CHECK(j["correction"] == true);
    CHECK(j["degenerate_perturbation"] == false);
    CHECK(line.find('\n') == std::string::npos);
}
