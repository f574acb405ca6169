#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// Runs the CLI through the shell, capturing stdout; stderr is discarded
// unless the command redirects it.
RunResult run(const std::string& args) {
    std::string cmd = std::string(PVERIFY_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

RunResult run_env(const std::string& env, const std::string& args) {
    std::string cmd = env + " " + std::string(PVERIFY_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

// ---------------------------------------------------------------------------
// Minimal JSON-Schema checker: the subset used by schemas/report.schema.json
// (type, enum, required, properties, items, oneOf).

bool schema_ok(const json& schema, const json& value, std::string& why);

bool type_ok(const std::string& t, const json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer() || v.is_number_unsigned();
    if (t == "number") return v.is_number();
    if (t == "null") return v.is_null();
    return false;
}

bool schema_ok(const json& schema, const json& value, std::string& why) {
    if (schema.contains("oneOf")) {
        int matches = 0;
        for (const json& alt : schema["oneOf"]) {
            std::string sub;
            if (schema_ok(alt, value, sub)) ++matches;
        }
        if (matches != 1) {
            why = "oneOf matched " + std::to_string(matches) + " alternatives";
            return false;
        }
        return true;
    }
    if (schema.contains("enum")) {
        for (const json& option : schema["enum"]) {
            if (option == value) return true;
        }
        why = "value " + value.dump() + " not in enum " + schema["enum"].dump();
        return false;
    }
    if (schema.contains("type") && !type_ok(schema["type"].get<std::string>(), value)) {
        why = "expected type " + schema["type"].get<std::string>() + ", got " + value.dump();
        return false;
    }
    if (schema.contains("required")) {
        for (const json& key : schema["required"]) {
            if (!value.contains(key.get<std::string>())) {
                why = "missing required key '" + key.get<std::string>() + "'";
                return false;
            }
        }
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items()) {
            if (!value.contains(key)) continue;
            std::string inner;
            if (!schema_ok(sub, value[key], inner)) {
                why = "property '" + key + "': " + inner;
                return false;
            }
        }
    }
    if (schema.contains("items") && value.is_array()) {
        for (std::size_t k = 0; k < value.size(); ++k) {
            std::string inner;
            if (!schema_ok(schema["items"], value[k], inner)) {
                why = "item " + std::to_string(k) + ": " + inner;
                return false;
            }
        }
    }
    return true;
}

const json& report_schema() {
    static json schema = [] {
        std::ifstream in(PVERIFY_SCHEMA_PATH);
        REQUIRE(in.good());
        return json::parse(in);
    }();
    return schema;
}

// Parses CLI output as JSON and insists it matches the report schema.
json validated(const std::string& text) {
    json doc = json::parse(text);
    std::string why;
    bool ok = schema_ok(report_schema(), doc, why);
    INFO("schema violation: ", why);
    CHECK(ok);
    return doc;
}

std::filesystem::path scratch_dir() {
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "pverify_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string frozen_label(const json& row) {
    const std::string closure = "closure table, row ";
    std::string prov = row["provenance"].get<std::string>();
    std::string pair = "|" + std::to_string(row["index"].get<int>());
    if (prov.rfind(closure, 0) == 0) return "closure|R" + prov.substr(closure.size()) + pair;
    return prov + pair;
}

}  // namespace

TEST_CASE("list names the seven built-in systems") {
    RunResult r = run("list");
    CHECK(r.code == 0);
    int count = 0;
    std::stringstream ss(r.out);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty()) ++count;
    }
    CHECK(count == 7);
    CHECK(r.out.find("V_I\n") != std::string::npos);
    CHECK(r.out.find("V_vii") != std::string::npos);

    json doc = validated(run("list --json").out);
    CHECK(doc["report"] == "list");
    CHECK(doc["systems"].size() == 7);
}

TEST_CASE("missing system file exits 2") {
    CHECK(run("verify missing.sys").code == 2);
    CHECK(run("dump nonesuch").code == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("verify V_I --only nonsense").code == 2);
    CHECK(run("verify V_I --convention sideways").code == 2);
    CHECK(run("fit V_I").code == 2);
    CHECK(run("fit V_I --pair A1 B1 --closure A1 A1 B1").code == 2);
    CHECK(run("dynamics V_I --start 1,2,3").code == 2);
}

TEST_CASE("commutation-only verification of V_I succeeds with the printed vanishing set") {
    RunResult r = run("verify V_I --only commutation");
    CHECK(r.code == 0);
    CHECK(r.out.find("(A1,A2) (A1,B2) (A2,B1) (B1,F) (B2,F)") != std::string::npos);
    CHECK(r.out.find("discrepancies: none") != std::string::npos);
    CHECK(r.out.find("result: verified") != std::string::npos);
}

TEST_CASE("pair fit reproduces the printed structure coefficient") {
    RunResult r = run("fit V_I --pair A1 B1");
    CHECK(r.code == 0);
    CHECK(r.out.find("A1^2*B1: -16") != std::string::npos);
    CHECK(r.out.find("nullspace dimension: 0") != std::string::npos);
    CHECK(r.out.find("residual: zero (exact)") != std::string::npos);

    json doc = validated(run("fit V_I --pair A1 B1 --json").out);
    CHECK(doc["fit"]["residual_zero"] == true);
    bool found = false;
    for (const json& t : doc["fit"]["terms"]) {
        if (t["monomial"] == "A1^2*B1") {
            found = true;
            CHECK(t["coefficient"] == "-16");
        }
    }
    CHECK(found);
}

TEST_CASE("fit of a vanishing bracket reports degeneracy with exit 1") {
    RunResult r = run("fit V_I --pair A1 A2");
    CHECK(r.code == 1);
    CHECK(r.out.find("degenerate") != std::string::npos);
    json doc = validated(run("fit V_I --pair A1 A2 --json").out);
    CHECK(doc["degenerate"] == true);
}

TEST_CASE("closure fit recovers the closure right-hand side") {
    RunResult r = run("fit V_I --closure A1 A1 B1");
    CHECK(r.code == 0);
    CHECK(r.out.find("H*A1: 8") != std::string::npos);
    CHECK(r.out.find("A1^2: -8") != std::string::npos);
    CHECK(r.out.find("A1*A2: -8") != std::string::npos);
    CHECK(r.out.find("B1: -16*delta") != std::string::npos);
}

TEST_CASE("independence prints the pinned summary line") {
    RunResult r = run("independence V_I");
    CHECK(r.code == 0);
    CHECK(r.out == "functional rank(H,A1,A2,B1,B2)=5; rank with F=5; linear: independent\n");
    json doc = validated(run("independence V_I --json").out);
    CHECK(doc["independence"]["functional_rank"] == 5);
    CHECK(doc["independence"]["rank_with_F"] == 5);
    CHECK(doc["independence"]["linear_independent"] == true);
}

TEST_CASE("dynamics refuses a Hamiltonian with a complex residue") {
    CHECK(run("dynamics V_II").code == 2);
}

TEST_CASE("dynamics trajectory CSV carries time, phase point and every generator") {
    std::filesystem::path csv = scratch_dir() / "traj.csv";
    std::filesystem::remove(csv);
    RunResult r = run("dynamics V_iv --horizon 0.1 --dump " + csv.string());
    CHECK(r.code == 0);
    std::ifstream in(csv);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x,y,z,p_x,p_y,p_z,H,A1,A2,B1,B2,F");
    json doc = validated(
        run("dynamics V_iv --horizon 0.1 --json --dump " + csv.string()).out);
    CHECK(doc["verdict"] == "within tolerance");
    CHECK(doc["drifts"].size() == 6);
}

TEST_CASE("verification reports are byte-identical across reruns") {
    RunResult a = run("verify V_I --json --seed 42");
    RunResult b = run("verify V_I --json --seed 42");
    CHECK(a.code == 1);
    CHECK(b.code == 1);
    CHECK(a.out == b.out);
    json doc = validated(a.out);
    CHECK(doc["verdict"] == "refuted");

    std::set<std::string> refuted;
    for (const json& row : doc["relations"]["rows"]) {
        if (row["status"] == "refuted") refuted.insert(frozen_label(row));
    }
    CHECK(refuted == std::set<std::string>{"closure|R6|1", "closure|R13|2", "closure|R14|1",
                                           "closure|R14|2"});
    int claims_refuted = 0;
    for (const json& row : doc["structure_claims"]["rows"]) {
        if (row["status"] == "refuted") {
            ++claims_refuted;
            CHECK(row["name"] == "N^2");
            CHECK(row.contains("fit"));
            CHECK(row["fit"]["residual_zero"] == true);
        }
    }
    CHECK(claims_refuted == 1);
}

TEST_CASE("parallel verification matches the serial report byte for byte") {
    RunResult serial = run("verify V_I --json --seed 42");
    RunResult parallel = run("verify V_I --json --seed 42 --jobs 2");
    CHECK(serial.code == parallel.code);
    CHECK(serial.out == parallel.out);
}

TEST_CASE("fast verification flags exactly the adjudicated V_I refutations") {
    json doc = validated(run("verify V_I --fast --json").out);
    CHECK(doc["fast"] == true);
    std::set<std::string> refuted;
    int probable = 0;
    for (const json& row : doc["relations"]["rows"]) {
        if (row["status"] == "refuted") refuted.insert(frozen_label(row));
        if (row["status"] == "probable") ++probable;
    }
    CHECK(refuted == std::set<std::string>{"closure|R6|1", "closure|R13|2", "closure|R14|1",
                                           "closure|R14|2"});
    CHECK(probable == 34);
    for (const json& row : doc["relations"]["rows"]) {
        if (row["status"] == "refuted") {
            CHECK(row.contains("witness"));
            CHECK(row.contains("residual_value"));
        }
    }
}

TEST_CASE("timeout produces a graceful partial report with exit 1") {
    RunResult r = run("verify V_I --json --timeout 0.01");
    CHECK(r.code == 1);
    json doc = validated(r.out);
    CHECK(doc["partial"] == true);
    CHECK(doc["verdict"] == "partial");
    CHECK(doc["relations"]["skipped"].get<int>() >= 1);
}

TEST_CASE("report cache reproduces bytes and exit code") {
    std::filesystem::path dir = scratch_dir() / "cache";
    std::filesystem::remove_all(dir);
    std::string env = "POISSON_VERIFY_CACHE=" + dir.string();
    RunResult first = run_env(env, "verify V_I --json --seed 42 --only commutation");
    RunResult second = run_env(env, "verify V_I --json --seed 42 --only commutation");
    CHECK(first.code == 0);
    CHECK(second.code == 0);
    CHECK(first.out == second.out);
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        (void)entry;
        ++files;
    }
    CHECK(files == 1);

    // A different seed is a different report and a different cache entry.
    RunResult other = run_env(env, "verify V_I --json --seed 7 --only commutation");
    CHECK(other.code == 0);
    CHECK(other.out != first.out);
}

TEST_CASE("alternate-convention downgrade warns by default and fails under --strict-convention") {
    std::filesystem::path toy = scratch_dir() / "toy.sys";
    {
        std::ofstream out(toy);
        out << "system toy\n"
            << "param alpha\n"
            << "generator H = p_x^2 + p_y^2 + p_z^2 + alpha*x^2\n"
            << "generator A = p_y\n"
            << "relation \"linear relation\": {H, x} = -2*p_x\n";
    }
    RunResult lenient = run("verify " + toy.string() + " --convention half");
    CHECK(lenient.code == 0);
    CHECK(lenient.out.find("verified-under-convention") != std::string::npos);
    CHECK(lenient.out.find("warning:") != std::string::npos);
    CHECK(lenient.out.find("result: verified") != std::string::npos);

    RunResult strict = run("verify " + toy.string() + " --convention half --strict-convention");
    CHECK(strict.code == 1);
    CHECK(strict.out.find("result: refuted") != std::string::npos);

    json doc = validated(run("verify " + toy.string() + " --convention half --json").out);
    CHECK(doc["relations"]["verified_under_convention"] == 1);
    CHECK(doc["warnings"].size() == 1);
}

TEST_CASE("dump emits a reparsable definition") {
    RunResult r = run("dump V_I");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("system V_I\n", 0) == 0);
    CHECK(r.out.find("bracketname C1 = { A1, B1 }") != std::string::npos);
    json doc = validated(run("dump V_I --json").out);
    CHECK(doc["text"] == r.out);
}
