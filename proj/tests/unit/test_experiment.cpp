#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "kickrot/experiment.hpp"
#include "kickrot/io.hpp"

using namespace kickrot;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text, const std::vector<Setting>& overrides = {}) {
    try {
        parse_config(text, overrides);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("kickrot_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("empty config resolves to the documented defaults") {
    const ExperimentSpec s = parse_config("");
    CHECK(s.mode == Mode::QuantumTrace);
    CHECK(s.quantum.arrangement == Arrangement::A);
    CHECK(s.quantum.gamma == 0.0);
    CHECK(s.quantum.kick_strength == 10.0);
    CHECK(s.quantum.grid_size == 256);
    CHECK(s.quantum.level_count == 96);
    CHECK(s.quantum.fourier_truncation == 48);
    CHECK(s.quantum.effective_bessel_cutoff() == 40);
    CHECK(s.t_max == 7.0);
    CHECK(s.dt == 2e-3);
    CHECK(s.out == "out");
    CHECK(s.preset.empty());
}

TEST_CASE("errors name the key and the line") {
    CHECK(error_of("gamma = -1").find("gamma") != std::string::npos);
    CHECK(error_of("", {{"gamma", "-1"}}).find("gamma") != std::string::npos);
    CHECK(error_of("# comment\nlevels = many\n").find("line 2: levels") != std::string::npos);
    CHECK(error_of("colour = blue").find("unknown key 'colour'") != std::string::npos);
    CHECK(error_of("arrangement = C").find("arrangement") != std::string::npos);
    CHECK(error_of("grid_size = 300").find("grid_size") != std::string::npos);
    CHECK(error_of("just words").find("line 1") != std::string::npos);
    CHECK(error_of("mode = classical\nensemble_size = 8").find("ensemble_size") != std::string::npos);
    CHECK(error_of("n_pulses = 0").find("n_pulses") != std::string::npos);
    CHECK(error_of("preset = fig9").find("preset") != std::string::npos);
}

TEST_CASE("overrides win over file values") {
    const ExperimentSpec s = parse_config("gamma = 3\narrangement = B", {{"gamma", "30"}});
    CHECK(s.quantum.gamma == 30.0);
    CHECK(s.quantum.arrangement == Arrangement::B);
    CHECK(s.classical.arrangement == Arrangement::B);
}

TEST_CASE("mode-dependent defaults") {
    const ExperimentSpec c = parse_config("mode = classical-trace\ngamma = 15");
    CHECK(c.t_max == 3.0);
    CHECK(c.classical.dt == 5e-3);
    CHECK(c.classical.gamma_cl == 15.0);
    const ExperimentSpec q = parse_config("mode = squeeze");
    CHECK(q.quantum.level_count == 240);
    CHECK(q.quantum.fourier_truncation == 120);
    CHECK(q.quantum.grid_size == 512);
    CHECK(q.dt == 5e-4);
    const ExperimentSpec explicit_basis = parse_config("mode = squeeze\nlevels = 80");
    CHECK(explicit_basis.quantum.level_count == 80);
    CHECK(explicit_basis.quantum.fourier_truncation == 48);
}

TEST_CASE("config echo parses back to the same spec") {
    const char* texts[] = {"", "mode = classical\ngamma = 45\narrangement = B\nensemble_size = 128",
                           "mode = squeeze\nn_pulses = 3\ngamma = 0.1", "mode = density\nsvg = true\nout = a/b",
                           "preset = fig5\nkick_strength = 7.25\ndt = 0.001"};
    for (const char* t : texts) {
        const ExperimentSpec s = parse_config(t);
        const ExperimentSpec back = parse_config(echo_config(s));
        CHECK(back == s);
        CHECK(echo_config(back) == echo_config(s));
    }
}

TEST_CASE("preset expansion") {
    const auto fig5 = expand_jobs(parse_config("preset = fig5"));
    REQUIRE(fig5.size() == 6);
    const double gammas[] = {0, 1, 3, 5, 10, 30};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(fig5[i].spec.mode == Mode::Squeeze);
        CHECK(fig5[i].spec.n_pulses == 7);
        CHECK(fig5[i].spec.quantum.kick_strength == 10.0);
        CHECK(fig5[i].spec.quantum.gamma == gammas[i]);
        CHECK(fig5[i].spec.quantum.level_count == 240);
    }
    const auto fig2a = expand_jobs(parse_config("preset = fig2a"));
    CHECK(fig2a.size() == 8);
    for (const auto& j : fig2a) CHECK(j.spec.quantum.arrangement == Arrangement::A);
    const auto fig2b = expand_jobs(parse_config("preset = fig2b"));
    for (const auto& j : fig2b) CHECK(j.spec.quantum.arrangement == Arrangement::B);
    const auto fig3 = expand_jobs(parse_config("preset = fig3"));
    CHECK(fig3.size() == 8);
    for (const auto& j : fig3) CHECK(j.spec.mode == Mode::ClassicalTrace);
    const auto fig4 = expand_jobs(parse_config("preset = fig4"));
    CHECK(fig4.size() == 2);
    CHECK(fig4[0].spec.mode == Mode::Density);
    // Job names are distinct so no two jobs share a file.
    std::set<std::string> names;
    for (const auto& j : fig2a) names.insert(j.name);
    CHECK(names.size() == fig2a.size());
    CHECK(expand_jobs(parse_config("")).size() == 1);
}

TEST_CASE("quantum run writes a self-describing, reproducible CSV") {
    const fs::path a = scratch("run_a"), b = scratch("run_b");
    const std::string cfg = "gamma = 3\nt_max = 0.2\ndt = 0.005\n";
    const auto ra = run(parse_config(cfg, {{"out", a.string()}}));
    const auto rb = run(parse_config(cfg, {{"out", b.string()}}));
    REQUIRE(ra.size() == 1);
    REQUIRE(ra[0].files.size() == 1);
    CHECK(ra[0].summary.find("t_c=") == 0);
    const std::string ta = slurp(ra[0].files[0]), tb = slurp(rb[0].files[0]);
    // Only the echoed output directory differs.
    auto strip_out = [](std::string t) {
        const auto p = t.find("# out = ");
        return t.erase(p, t.find('\n', p) - p);
    };
    CHECK(strip_out(ta) == strip_out(tb));
    CHECK(ta.rfind(std::string("# kickrot ") + artifact_version, 0) == 0);
    CHECK(ta.find("# gamma = 3\n") != std::string::npos);
    CHECK(ta.find("\nt,O\n0,") != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("classical and density runs write their artifacts") {
    const fs::path dir = scratch("modes");
    const auto c = run(parse_config("mode = classical\ngamma = 15\nt_max = 0.5\nensemble_size = 64", {{"out", dir.string()}}));
    CHECK(slurp(c[0].files[0]).find("\nt,O_classical\n") != std::string::npos);
    const auto d = run(parse_config("mode = density\ngamma = 1\nsvg = true\ndensity_size = 32", {{"out", dir.string()}}));
    CHECK(d[0].files.size() == 6);
    bool has_svg = false;
    for (const auto& f : d[0].files) {
        CHECK(fs::exists(f));
        has_svg = has_svg || f.extension() == ".svg";
    }
    CHECK(has_svg);
    fs::remove_all(dir);
}

TEST_CASE("unwritable output is an I/O error") {
    const fs::path dir = scratch("blocked");
    fs::create_directories(dir.parent_path());
    std::ofstream(dir) << "a file, not a directory";
    CHECK_THROWS_AS(run(parse_config("t_max = 0.01\ndt = 0.005", {{"out", (dir / "sub").string()}})), IoError);
    fs::remove(dir);
}

TEST_CASE("mode names round-trip") {
    for (Mode m : {Mode::QuantumTrace, Mode::ClassicalTrace, Mode::Density, Mode::Squeeze, Mode::Validate})
        CHECK(parse_mode(to_string(m)) == m);
    CHECK_THROWS_AS(parse_mode("plot"), ConfigError);
    CHECK(describe_keys().find("kick_strength") != std::string::npos);
}

TEST_CASE("self checks pass") {
    for (const auto& c : validation_checks()) {
        INFO(c.name << ": " << c.detail);
        CHECK(c.passed);
    }
}
