#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "signed_hk/io.hpp"

using namespace signed_hk;

namespace {

template <class F>
ErrorCode code_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::invalid_parameter;
}

std::filesystem::path scratch_dir()
{
    auto dir = std::filesystem::temp_directory_path() /
               ("signed_hk_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST(GraphFile, RoundTripsRandomSbm)
{
    auto rng = make_rng(5);
    auto g = generate_sbm_signed(40, 4, 0.3, 0.2, 0.5, rng);
    std::stringstream ss;
    io::write_graph(ss, g);
    auto back = io::read_graph(ss);
    EXPECT_EQ(back, g);
    ASSERT_TRUE(back.groups());
    EXPECT_EQ(*back.groups(), *g.groups());
}

TEST(GraphFile, AcceptsCommentsBlankLinesAndPlusSign)
{
    std::istringstream in("# fig 2\n\nn=3\n0 2 -1\n0 1 +1\n1 2 1\n");
    auto g = io::read_graph(in);
    EXPECT_EQ(g.size(), 3u);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_EQ(g.repulsive_edge_count(), 1u);
    EXPECT_EQ(g.sign(2, 0), -1);
}

TEST(GraphFile, StorageChoiceDoesNotChangeGraph)
{
    std::istringstream a("n=4\n0 1 -1\n2 3 1\n"), b("n=4\n0 1 -1\n2 3 1\n");
    auto dense = io::read_graph(a, Storage::dense);
    auto sparse = io::read_graph(b, Storage::sparse);
    EXPECT_TRUE(dense.is_dense());
    EXPECT_FALSE(sparse.is_dense());
    EXPECT_EQ(dense, sparse);
}

TEST(GraphFile, MalformedInputRejected)
{
    auto parse = [](const char* text) {
        return [text] {
            std::istringstream in(text);
            io::read_graph(in);
        };
    };
    EXPECT_EQ(code_of(parse("")), ErrorCode::parse_error);
    EXPECT_EQ(code_of(parse("0 1 1\n")), ErrorCode::parse_error);
    EXPECT_EQ(code_of(parse("n=3\n0 1\n")), ErrorCode::parse_error);
    EXPECT_EQ(code_of(parse("n=3\n0 1 2\n")), ErrorCode::parse_error);
    EXPECT_EQ(code_of(parse("n=3\n0 1 x\n")), ErrorCode::parse_error);
    EXPECT_EQ(code_of(parse("n=3\ngroups=1,1\n")), ErrorCode::parse_error);
    EXPECT_EQ(code_of(parse("n=3\n0 3 1\n")), ErrorCode::index_out_of_range);
    EXPECT_EQ(code_of(parse("n=3\n0 1 1\n1 0 -1\n")), ErrorCode::conflicting_edge_sign);
    EXPECT_EQ(code_of(parse("n=3\n1 1 1\n")), ErrorCode::self_loop_rejected);
}

TEST(GraphFile, FileErrorsCarryPath)
{
    EXPECT_EQ(code_of([] { io::load_graph("/nonexistent/dir/graph.txt"); }), ErrorCode::io_failure);
    EXPECT_EQ(code_of([] { io::save_graph("/nonexistent/dir/graph.txt", build_signed_graph(2, {})); }),
              ErrorCode::io_failure);

    const auto path = scratch_dir() / "bad.txt";
    io::write_text(path, "n=2\n0 1 7\n");
    try {
        io::load_graph(path);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::parse_error);
        EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
        EXPECT_EQ(std::string(e.what()).find("ParseError", 5), std::string::npos);
    }
}

TEST(TrajectoryCsv, RoundTripsBitExactly)
{
    auto rng = make_rng(9);
    auto g = generate_er_signed(12, 0.4, 0.3, rng);
    auto x0 = uniform_opinions(12, 0.0, 1.0, rng);
    ModelParams p;
    p.c = 0.3;
    auto traj = run(x0, g, p);
    std::stringstream ss;
    io::write_trajectory_csv(ss, traj);
    auto table = io::read_trajectory_csv(ss);
    ASSERT_EQ(table.states.size(), traj.states.size());
    EXPECT_EQ(table.times, traj.times);
    for (std::size_t k = 0; k < traj.states.size(); ++k)
        EXPECT_EQ(table.states[k], traj.states[k]);
}

TEST(TrajectoryCsv, HeaderAndRowsValidated)
{
    auto read = [](const char* text) {
        return [text] {
            std::istringstream in(text);
            io::read_trajectory_csv(in);
        };
    };
    EXPECT_EQ(code_of(read("")), ErrorCode::parse_error);
    EXPECT_EQ(code_of(read("x,node_0\n0,1\n")), ErrorCode::parse_error);
    EXPECT_EQ(code_of(read("t,node_1\n0,1\n")), ErrorCode::parse_error);
    EXPECT_EQ(code_of(read("t,node_0\n0,1,2\n")), ErrorCode::parse_error);
    EXPECT_EQ(code_of(read("t,node_0\n")), ErrorCode::parse_error);
}

TEST(Params, JsonRoundTrip)
{
    ModelParams p;
    p.c = 0.35;
    p.tol = 1e-9;
    p.max_iter = 1234;
    p.variant = Variant::naive_repulsion;
    p.stop_on_convergence = false;
    p.cycle.enabled = true;
    p.cycle.window = 77;
    p.cycle.resolution = 1e-5;
    auto q = io::params_from_json(io::params_to_json(p));
    EXPECT_EQ(q.c, p.c);
    EXPECT_EQ(q.tol, p.tol);
    EXPECT_EQ(q.max_iter, p.max_iter);
    EXPECT_EQ(q.variant, p.variant);
    EXPECT_EQ(q.stop_on_convergence, p.stop_on_convergence);
    EXPECT_EQ(q.cycle.enabled, true);
    EXPECT_EQ(q.cycle.window, 77u);
    EXPECT_EQ(q.cycle.resolution, 1e-5);
}

TEST(Params, MissingKeysKeepBase)
{
    ModelParams base;
    base.c = 0.9;
    auto q = io::params_from_json(nlohmann::json{{"tol", 1e-6}}, base);
    EXPECT_EQ(q.c, 0.9);
    EXPECT_EQ(q.tol, 1e-6);
}

TEST(Metadata, RecordsRunSummary)
{
    auto g = build_signed_graph(3, {{0, 2, -1}, {0, 1, 1}, {1, 2, 1}});
    ModelParams p;
    p.c = 0.6;
    auto traj = run(OpinionState{1.0, 0.5, 0.0}, g, p);
    auto meta = io::trajectory_metadata(traj, 42, g);
    EXPECT_EQ(meta["converged"], true);
    EXPECT_EQ(meta["stopping_time"], traj.stopping_time);
    EXPECT_EQ(meta["m"], 3);
    EXPECT_EQ(meta["m_r"], 1);
    EXPECT_EQ(meta["seed"], 42);
    EXPECT_EQ(meta["variant"], "scaled");
    EXPECT_TRUE(io::trajectory_metadata(traj, std::nullopt, g)["seed"].is_null());
}
