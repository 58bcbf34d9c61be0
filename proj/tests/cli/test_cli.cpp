// End-to-end CLI checks: exit codes, stderr diagnostics, --seed determinism,
// golden outputs, stdout mode, and the stream format over a real socket.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "aldus/stream.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
std::string g_fixtures;
std::string g_golden;
fs::path g_tmp;

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

CommandResult run(const std::string& args, const std::string& env = "") {
    const fs::path out_file = g_tmp / "stdout.txt";
    const fs::path err_file = g_tmp / "stderr.txt";
    const std::string cmd = env + " '" + g_cli + "' " + args + " >'" + out_file.string() +
                            "' 2>'" + err_file.string() + "'";
    const int status = std::system(cmd.c_str());
    CommandResult res;
    if (status != -1 && WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
    const auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    res.out = slurp(out_file);
    res.err = slurp(err_file);
    return res;
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixture(const std::string& name) {
    return (fs::path(g_fixtures) / name).string();
}

}  // namespace

TEST_CASE("missing config file exits 1") {
    const auto res = run("simulate --config /no/such/file.json");
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("config error") != std::string::npos);
}

TEST_CASE("semantic config errors name the field and exit 1") {
    const auto res = run("simulate --config '" + fixture("errors/negative_density.json") + "'");
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("clouds[0].number_density") != std::string::npos);
}

TEST_CASE("same seed gives identical output files") {
    const fs::path a = g_tmp / "seed42_a.csv";
    const fs::path b = g_tmp / "seed42_b.csv";
    const fs::path c = g_tmp / "seed7.csv";
    CHECK(run("simulate --config '" + fixture("low_density.json") + "' --seed 42 --out '" +
              a.string() + "'").exit_code == 0);
    CHECK(run("simulate --config '" + fixture("low_density.json") + "' --seed 42 --out '" +
              b.string() + "'").exit_code == 0);
    CHECK(run("simulate --config '" + fixture("low_density.json") + "' --seed 7 --out '" +
              c.string() + "'").exit_code == 0);
    CHECK(slurp_file(a) == slurp_file(b));
    CHECK(slurp_file(a) != slurp_file(c));
}

TEST_CASE("stdout carries the data with --out - and matches the golden frame") {
    const auto res = run("simulate --config '" + fixture("reference.json") + "' --out -");
    CHECK(res.exit_code == 0);
    CHECK(res.out == slurp_file(fs::path(g_golden) / "reference_frame.csv"));
    CHECK(res.err.find("frames/s") != std::string::npos);  // timing goes to stderr
}

TEST_CASE("ALDUS_THREADS env var is honored without changing output") {
    const fs::path out = g_tmp / "env_threads.csv";
    const auto res = run("simulate --config '" + fixture("reference.json") + "' --out '" +
                         out.string() + "'", "ALDUS_THREADS=5");
    CHECK(res.exit_code == 0);
    CHECK(slurp_file(out) == slurp_file(fs::path(g_golden) / "reference_frame.csv"));
}

TEST_CASE("unwritable output path exits 2") {
    const auto res = run("simulate --config '" + fixture("reference.json") +
                         "' --out /no/such/dir/out.csv");
    CHECK(res.exit_code == 2);
}

TEST_CASE("unresolvable stream bind address exits 3") {
    const auto res = run("simulate --config '" + fixture("reference.json") +
                         "' --format stream --out 999.0.0.1:4100");
    CHECK(res.exit_code == 3);
}

TEST_CASE("malformed stream address is a config error") {
    const auto res = run("simulate --config '" + fixture("reference.json") +
                         "' --format stream --out nocolon");
    CHECK(res.exit_code == 1);
}

TEST_CASE("pcd output writes a valid header") {
    const fs::path out = g_tmp / "frame.pcd";
    const auto res = run("simulate --config '" + fixture("reference.json") +
                         "' --format pcd --out '" + out.string() + "'");
    CHECK(res.exit_code == 0);
    const std::string text = slurp_file(out);
    CHECK(text.find("# .PCD v0.7") != std::string::npos);
    CHECK(text.find("FIELDS x y z intensity ring") != std::string::npos);
    CHECK(text.find("WIDTH 28800") != std::string::npos);
}

TEST_CASE("inject with a cloudless config is the identity and reports all-kept") {
    const fs::path out = g_tmp / "inject_identity.csv";
    const std::string golden_frame = (fs::path(g_golden) / "reference_frame.csv").string();
    const auto res = run("inject --in '" + golden_frame + "' --config '" +
                         fixture("reference.json") + "' --out '" + out.string() + "'");
    CHECK(res.exit_code == 0);
    CHECK(slurp_file(out) == slurp_file(golden_frame));
    CHECK(res.err.find("kept=28800") != std::string::npos);
    CHECK(res.err.find("replaced=0") != std::string::npos);
}

TEST_CASE("inject matches the committed golden output") {
    const fs::path out = g_tmp / "inject_low.csv";
    const auto res = run("inject --in '" + (fs::path(g_golden) / "reference_frame.csv").string() +
                         "' --config '" + fixture("low_density.json") + "' --out '" +
                         out.string() + "'");
    CHECK(res.exit_code == 0);
    CHECK(slurp_file(out) == slurp_file(fs::path(g_golden) / "inject_low_density.csv"));
}

TEST_CASE("inject rejects unknown channels naming them") {
    const fs::path bad = g_tmp / "bad_channels.csv";
    {
        std::ofstream os(bad);
        os << "frame_id,channel,azimuth_deg,elevation_deg,range_m,x,y,z,intensity,kind,source_id\n";
        os << "0,17,0,0,10,10,0,0,100,target,0\n";
    }
    const auto res = run("inject --in '" + bad.string() + "' --config '" +
                         fixture("reference.json") + "' --out -");
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("17") != std::string::npos);
}

TEST_CASE("inject reports parse errors with line numbers") {
    const fs::path bad = g_tmp / "bad_rows.csv";
    {
        std::ofstream os(bad);
        os << "frame_id,channel,azimuth_deg,elevation_deg,range_m,x,y,z,intensity,kind,source_id\n";
        os << "0,0,0,0,10,10,0,0,100,target,0\n";
        os << "0,0,zap,0,10,10,0,0,100,target,0\n";
    }
    const auto res = run("inject --in '" + bad.string() + "' --config '" +
                         fixture("reference.json") + "' --out -");
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("line 3") != std::string::npos);
}

TEST_CASE("sweep rejects bad parameters and emits the metrics table") {
    CHECK(run("sweep --config '" + fixture("low_density.json") +
              "' --param magnetism --values 1,2 --out -").exit_code == 1);

    const auto res = run("sweep --config '" + fixture("low_density.json") +
                         "' --param density --values 0,1e9 --out -");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("param,value,replicate,object_id,return_count,mean_intensity,"
                       "dust_count,dust_mean_intensity,dropped") == 0);
    CHECK(res.out.find("density,1e+09") != std::string::npos);
}

TEST_CASE("bench reports throughput and exits 0") {
    const auto res = run("bench --config '" + fixture("low_density.json") + "' --frames 3");
    CHECK(res.exit_code == 0);
    CHECK(res.out.empty());
    CHECK(res.err.find("frames=3") != std::string::npos);
    CHECK(res.err.find("frames/s") != std::string::npos);

    const auto single = run("bench --config '" + fixture("low_density.json") + "' --frames 1");
    CHECK(single.exit_code == 0);
    CHECK(single.err.find("frames=1") != std::string::npos);
}

TEST_CASE("multi-frame pcd runs write one numbered file per frame") {
    const fs::path out = g_tmp / "multi.pcd";
    const auto res = run("simulate --config '" + fixture("reference.json") +
                         "' --format pcd --frames 2 --out '" + out.string() + "'");
    CHECK(res.exit_code == 0);
    CHECK(fs::exists(g_tmp / "multi_000000.pcd"));
    CHECK(fs::exists(g_tmp / "multi_000001.pcd"));
}

TEST_CASE("stream format serves the ALDS protocol over a socket") {
    const std::uint16_t port = 41873;
    // timeout(1) reaps the server if this client never connects.
    const std::string cmd = "timeout 30 '" + g_cli + "' simulate --config '" +
                            fixture("reference.json") + "' --format stream --out 127.0.0.1:" +
                            std::to_string(port) + " >/dev/null 2>&1 &";
    REQUIRE(std::system(cmd.c_str()) == 0);

    int fd = -1;
    const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(20);
    while (std::chrono::steady_clock::now() < deadline) {
        fd = ::socket(AF_INET, SOCK_STREAM, 0);
        REQUIRE(fd >= 0);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_port = htons(port);
        ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
        if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0) break;
        ::close(fd);
        fd = -1;
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    REQUIRE(fd >= 0);

    std::vector<std::uint8_t> bytes;
    std::uint8_t buf[4096];
    while (true) {
        const ssize_t n = ::read(fd, buf, sizeof buf);
        if (n <= 0) break;
        bytes.insert(bytes.end(), buf, buf + n);
    }
    ::close(fd);

    const auto frames = aldus::decode_stream(bytes);
    REQUIRE(frames.size() == 1);
    CHECK(frames[0].frame_id == 0);
    CHECK(frames[0].points.size() == 28800);  // fully enclosed reference scene
}

int main(int argc, char** argv) {
    std::vector<char*> doctest_args = {argv[0]};
    for (int i = 1; i < argc; ++i) {
        const std::string flag = argv[i];
        if (flag == "--cli" && i + 1 < argc) {
            g_cli = argv[++i];
        } else if (flag == "--fixtures" && i + 1 < argc) {
            g_fixtures = argv[++i];
        } else if (flag == "--golden" && i + 1 < argc) {
            g_golden = argv[++i];
        } else {
            doctest_args.push_back(argv[i]);
        }
    }
    if (g_cli.empty() || g_fixtures.empty() || g_golden.empty()) {
        std::fprintf(stderr, "usage: cli_tests --cli <aldus> --fixtures <dir> --golden <dir>\n");
        return 64;
    }
    g_tmp = fs::temp_directory_path() / "aldus_cli_tests";
    fs::create_directories(g_tmp);
    doctest::Context context;
    context.applyCommandLine(int(doctest_args.size()), doctest_args.data());
    return context.run();
}
