#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "bellsim/cli.hpp"
#include "bellsim/constants.hpp"

using namespace bellsim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    const Run r = run(std::move(args));
    REQUIRE_MESSAGE(r.code == kExitOk, r.err);
    return json::parse(r.out);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("bellsim_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// Runs the installed binary through the shell and returns its exit status.
int shell(const std::string& command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const std::string kExe = BELLSIM_EXE;

}  // namespace

TEST_CASE("bound reports") {
    const json r = run_json({"bound", "earth_moon_case3"});
    CHECK(r["command"] == "bound");
    CHECK(r["version"] == "0.1.0");
    CHECK(r["results"]["v_min_over_c"].get<double>() == doctest::Approx(5.12888e11).epsilon(1e-5));
    CHECK(r["results"]["L_max_m"] == 384'400e3);
    CHECK(r["results"]["tau_s"] == 5e-12);
    CHECK(r["results"]["gain_vs_cao2017"].get<double>() == doctest::Approx(549.142857).epsilon(1e-6));
    CHECK(r["results"].contains("gain_vs_gisin1999"));
    CHECK(r["inputs"]["tau_overridden"] == false);
    CHECK(r["inputs"]["scenario"]["ref"] == "earth_moon_case3");
    CHECK_FALSE(r["discrepancies"].empty());

    const json t = run_json({"bound", "gisin1999", "--tau", "10ps"});
    CHECK(t["results"]["v_min_over_c"].get<double>() == doctest::Approx(3.5357794e6).epsilon(1e-6));
    CHECK(t["inputs"]["tau_s"].get<double>() == doctest::Approx(1e-11));

    const json far = run_json({"bound", "earth_moon_case1", "--earth-moon-distance", "390000km"});
    CHECK(far["results"]["L_max_m"] == 390'000e3);
}

TEST_CASE("exit codes") {
    CHECK(run({"bound", "nosuch"}).code == kExitUnknownReference);
    CHECK(run({"simulate", "nosuch.json", "--fallback", "lhv"}).code == kExitUnknownReference);

    const Run bad_tau = run({"bound", "gisin1999", "--tau", "-5ps"});
    CHECK(bad_tau.code == kExitValidation);
    CHECK(bad_tau.out.empty());
    CHECK(bad_tau.err.find("--tau") != std::string::npos);
    CHECK(run({"bound", "gisin1999", "--tau", "fast"}).code == kExitValidation);
    CHECK(run({"bound"}).code == kExitValidation);
    CHECK(run({"frobnicate"}).code == kExitValidation);
    CHECK(run({"simulate", "gisin1999"}).code == kExitValidation);  // fallback is mandatory
    CHECK(run({"simulate", "gisin1999", "--fallback", "lhv", "--n", "2"}).code == kExitValidation);
    CHECK(run({"scales", "--N", ""}).code == kExitValidation);
    CHECK(run({"bound", "gisin1999", "--format", "xml"}).code == kExitValidation);
    CHECK(run({"sweep", "gisin1999", "--fallback", "lhv", "--vmin", "2", "--vmax", "1", "--points", "3",
               "--out", "x.csv"}).code == kExitValidation);
    CHECK(run({"linkbudget", "--length-a", "1km"}).code == kExitValidation);

    TempDir tmp;
    const std::string missing_dir = (tmp.path / "no" / "such" / "dir" / "s.csv").string();
    CHECK(run({"sweep", "gisin1999", "--fallback", "lhv", "--vmin", "1", "--vmax", "2", "--points", "2",
               "--n", "10", "--out", missing_dir}).code == kExitIo);
    CHECK(run({"bound", "gisin1999", "--ledger", missing_dir}).code == kExitIo);
    CHECK(run({"validate", (tmp.path / "absent.json").string()}).code == kExitUnknownReference);

    std::ofstream(tmp.path / "broken.json") << "{\"name\": \"x\"";
    CHECK(run({"validate", (tmp.path / "broken.json").string()}).code == kExitValidation);
}

TEST_CASE("exit codes from the binary") {
    const std::string quiet = " >/dev/null 2>&1";
    CHECK(shell(kExe + " bound gisin1999" + quiet) == 0);
    CHECK(shell(kExe + " bound gisin1999 --tau 0ps" + quiet) == 2);
    CHECK(shell(kExe + " bound nosuch" + quiet) == 3);
    CHECK(shell(kExe + " sweep gisin1999 --fallback lhv --vmin 1 --vmax 2 --points 2 --n 10"
                       " --out /proc/bellsim_cannot_write.csv" + quiet) == 4);
}

TEST_CASE("formats") {
    const Run text = run({"bound", "gisin1999", "--format", "text"});
    REQUIRE(text.code == 0);
    CHECK(text.out.find("results.v_min_over_c: 7071558.818200824\n") != std::string::npos);

    const Run csv = run({"bound", "gisin1999", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("key,value\n", 0) == 0);
    CHECK(csv.out.find("\nv_min_over_c,7071558.818200824\n") != std::string::npos);

    const Run table = run({"scales", "--format", "csv"});
    REQUIRE(table.code == 0);
    CHECK(table.out.rfind("N,classification,distance_m,label,v_over_c\n", 0) == 0);

    for (const char* cmd : {"bound", "scales", "presets"}) {
        CAPTURE(cmd);
        std::vector<std::string> args{cmd};
        if (std::string(cmd) == "bound") args.push_back("cao2017");
        CHECK(run(args).out == run(args).out);
    }
}

TEST_CASE("simulate") {
    const json r = run_json({"simulate", "gisin1999", "--fallback", "lhv", "--n", "20000", "--seed", "9"});
    CHECK(r["seed"] == 9);
    CHECK(r["inputs"]["n_pairs"] == 20000);
    CHECK(r["inputs"]["fallback"] == "lhv");
    CHECK(r["inputs"]["v_over_c"] == "inf");
    const double s = r["results"]["S_hat"].get<double>(), se = r["results"]["stderr_S"].get<double>();
    CHECK(std::abs(s - 2.0 * std::sqrt(2.0)) <= 5 * se);
    CHECK(r["results"]["fraction_connected"] == 1.0);

    const json slow = run_json({"simulate", "gisin1999", "--fallback", "uncorrelated", "--speed", "1e6",
                                "--n", "20000"});
    CHECK(slow["results"]["fraction_connected"] == 0.0);
    CHECK(std::abs(slow["results"]["S_hat"].get<double>()) <= 5 * slow["results"]["stderr_S"].get<double>());

    const json deg = run_json({"simulate", "gisin1999", "--fallback", "lhv", "--n", "100", "--settings",
                               "0deg,45deg,22.5deg,67.5deg"});
    CHECK(deg["inputs"]["settings"]["b"].get<double>() == doctest::Approx(kPi / 8));

    TempDir tmp;
    const fs::path trace = tmp.path / "trace.csv";
    REQUIRE(run({"simulate", "gisin1999", "--fallback", "lhv", "--n", "50", "--trace", trace.string(),
                 "--trace-cap", "7"}).code == 0);
    const std::string body = slurp(trace);
    CHECK(std::count(body.begin(), body.end(), '\n') == 8);
}

TEST_CASE("sweep output") {
    TempDir tmp;
    const fs::path one = tmp.path / "one.csv";
    const json r = run_json({"sweep", "earth_moon_case1", "--fallback", "lhv", "--n", "200", "--points", "1",
                             "--vmin", "3", "--out", one.string()});
    CHECK(r["results"]["rows"].size() == 1);
    const std::string body = slurp(one);
    CHECK(body.rfind("v_over_c,S_hat,stderr_S,n_pairs,fraction_connected\n", 0) == 0);
    CHECK(std::count(body.begin(), body.end(), '\n') == 2);

    const fs::path a = tmp.path / "a.csv", b = tmp.path / "b.csv";
    const std::vector<std::string> base{"sweep", "gisin1999", "--fallback", "lhv", "--n", "500", "--seed", "77",
                                        "--vmin", "1e6", "--vmax", "1e8", "--points", "9", "--out"};
    auto with = [&](const fs::path& p, const char* workers) {
        auto args = base;
        args.push_back(p.string());
        args.insert(args.end(), {"--workers", workers});
        return args;
    };
    REQUIRE(run(with(a, "1")).code == 0);
    REQUIRE(run(with(b, "1")).code == 0);
    CHECK(slurp(a) == slurp(b));
    REQUIRE(run(with(b, "3")).code == 0);
    CHECK(slurp(a) == slurp(b));

    const json s = run_json(with(b, "2"));
    const json& tr = s["results"]["transition"];
    REQUIRE(tr.is_object());
    const double v_star = s["results"]["critical_speed"].get<double>();
    CHECK(tr["v_lower"].get<double>() < v_star);
    CHECK(v_star <= tr["v_upper"].get<double>());
    CHECK(tr["contains_critical_speed"] == true);
}

TEST_CASE("linkbudget") {
    const json r = run_json({"linkbudget", "--length-a", "500km", "--length-b", "384400km", "--pair-rate", "1e9",
                             "--ref-loss-db", "0"});
    CHECK(r["results"]["losses_db"][1].get<double>() == doctest::Approx(57.716267493209784).epsilon(1e-12));
    CHECK(r["results"]["pairs_required"]["per_setting"] == 27);
    CHECK(r["results"]["cadence_flag"] == true);
    CHECK(r["inputs"]["reference_length_m"] == 500e3);

    const json scen = run_json({"linkbudget", "--scenario", "earth_moon_case1", "--pair-rate", "1e6"});
    CHECK(scen["inputs"]["arm_lengths_m"][1] == 384'400e3);
    CHECK(run({"linkbudget", "--length-a", "1km", "--length-b", "1km", "--pair-rate", "-1"}).code == 2);
    CHECK(run({"linkbudget", "--length-a", "1km", "--length-b", "1km", "--pair-rate", "1",
               "--eff-a", "1.5"}).code == 2);
}

TEST_CASE("scales") {
    const json r = run_json({"scales"});
    const json& rows = r["results"]["rows"];
    REQUIRE(rows.size() == 4);
    CHECK(rows[0]["N"] == -1);
    CHECK(rows[1]["N"] == 0);
    CHECK(rows[2]["N"] == 1);
    CHECK(rows[3]["label"] == "MOND");
    CHECK(rows[1]["classification"] == "excluded");
    CHECK(rows[2]["classification"] == "excluded");
    // N = -1 lands at about 2.7 km, inside the window.
    CHECK(rows[0]["distance_m"].get<double>() == doctest::Approx(2736.563).epsilon(1e-6));
    CHECK(rows[0]["classification"] == "observable");
    CHECK(rows[3]["classification"] == "unobservable_at_earth_moon");
    CHECK(r["inputs"]["N"] == json::array({-1, 0, 1}));

    const json e = run_json({"scales", "--mass", "electron"});
    CHECK(e["results"]["kappa"].get<double>() == doctest::Approx(1.7518093950948948e-45).epsilon(1e-10));
    CHECK(e["results"]["rows"][0]["classification"] == "unobservable_at_earth_moon");
    CHECK(e["results"]["rows"].size() == 4);

    const json custom = run_json({"scales", "--N", "-2,2"});
    CHECK(custom["results"]["rows"].size() == 3);
}

TEST_CASE("presets and validate") {
    const json list = run_json({"presets"});
    CHECK(list["results"]["rows"].size() == 7);

    TempDir tmp;
    for (const auto& row : list["results"]["rows"]) {
        const std::string name = row["name"];
        CAPTURE(name);
        const Run exported = run({"presets", "--export", name});
        REQUIRE(exported.code == 0);
        const fs::path file = tmp.path / (name + ".json");
        std::ofstream(file) << exported.out;
        const json v = run_json({"validate", file.string()});
        CHECK(v["results"]["valid"] == true);
        CHECK(v["results"]["name"] == name);

        const json b = run_json({"bound", file.string()});
        CHECK(b["results"]["v_min_over_c"] == row["v_min_over_c"]);
    }
    CHECK(run({"presets", "--export", "nosuch"}).code == kExitUnknownReference);
}

TEST_CASE("ledger file") {
    TempDir tmp;
    const fs::path a = tmp.path / "a.csv", b = tmp.path / "b.csv", c = tmp.path / "c.csv";
    REQUIRE(run({"bound", "gisin1999", "--ledger", a.string()}).code == 0);
    REQUIRE(run({"bound", "gisin1999", "--ledger", b.string()}).code == 0);
    REQUIRE(run({"scales", "--ledger", c.string()}).code == 0);
    const std::string body = slurp(a);
    CHECK(body.rfind("claim_id,paper_location,paper_value,computed_value,relative_difference\n", 0) == 0);
    CHECK(body == slurp(b));
    CHECK(body.find("\ngisin_bound_quoted,") != std::string::npos);
    CHECK(slurp(c).find("\ncoupling_constant,") != std::string::npos);
}
