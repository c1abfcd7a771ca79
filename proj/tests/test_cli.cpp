// Exercises the installed command surface end to end: exit codes, gallery
// output, determinism. Spawns the real binary (path given as argv[1]).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAIL: " << what << "\n";
    }
}

int run(const std::string& cmd) {
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: test_cli <cli-path> <scratch-dir>\n";
        return 2;
    }
    std::string cli = argv[1];
    fs::path dir = argv[2];
    fs::create_directories(dir);
    fs::path fx = dir / "fixtures";

    expect(run(cli + " gallery --out " + fx.string() + " > /dev/null") == 0, "gallery exit 0");
    for (const char* name : {"identity", "double_cover_circle", "figure2", "remark210",
                             "interval_onto_circle", "eight_from_two_circles",
                             "two_circles_with_interval"})
        expect(fs::exists(fx / (std::string(name) + ".json")),
               std::string("fixture written: ") + name);

    expect(run(cli + " classify " + (fx / "figure2.json").string() + " > /dev/null") == 0,
           "classify figure2 exit 0");
    expect(run(cli + " classify " + (fx / "interval_onto_circle.json").string() +
               " > /dev/null") == 1,
           "classify non-open exit 1");
    expect(run(cli + " classify " + (dir / "missing.json").string() + " 2> /dev/null") == 2,
           "missing file exit 2");

    {
        std::ofstream bad(dir / "bad.json");
        bad << "{not json";
    }
    expect(run(cli + " classify " + (dir / "bad.json").string() + " 2> /dev/null") == 2,
           "malformed JSON exit 2");

    expect(run(cli + " stratify " + (fx / "figure2.json").string() + " > /dev/null") == 0,
           "stratify exit 0");

    expect(run(cli + " weights " + (fx / "figure2.json").string() + " --out " +
               (dir / "w.json").string()) == 0,
           "weights exit 0");
    expect(slurp(dir / "w.json").find("\"1/2\"") != std::string::npos,
           "weight file carries the branch value 1/2");

    expect(run(cli + " quasibasis " + (fx / "double_cover_circle.json").string() +
               " > /dev/null") == 0,
           "quasibasis on a covering exit 0");
    expect(run(cli + " quasibasis " + (fx / "figure2.json").string() + " > /dev/null") == 1,
           "quasibasis on a branched covering exit 1");

    expect(run(cli + " pipeline " + (fx / "two_circles_with_interval.json").string() +
               " --samples 8 > /dev/null") == 0,
           "pipeline exit 0");

    // expectation command round trip
    {
        std::ofstream f(dir / "f.json");
        f << R"({"values":{"a0":"1","a1":"1","a2":"1","a3":"0"}})";
    }
    expect(run(cli + " expectation " + (fx / "figure2.json").string() + " -f " +
               (dir / "f.json").string() + " --out " + (dir / "ef.json").string()) == 0,
           "expectation exit 0");
    expect(slurp(dir / "ef.json").find("\"k_min\": \"2\"") != std::string::npos,
           "expectation report carries k_min 2");

    // deterministic output
    expect(run(cli + " pipeline " + (fx / "figure2.json").string() + " --samples 8 --out " +
               (dir / "r1.json").string()) == 0,
           "pipeline run 1");
    expect(run(cli + " pipeline " + (fx / "figure2.json").string() + " --samples 8 --out " +
               (dir / "r2.json").string()) == 0,
           "pipeline run 2");
    expect(slurp(dir / "r1.json") == slurp(dir / "r2.json"), "pipeline output is stable");

    if (failures == 0) std::cout << "cli: all checks passed\n";
    return failures == 0 ? 0 : 1;
}
