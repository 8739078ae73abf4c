#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "semiq/cli.hpp"
#include "semiq/record.hpp"
#include "support.hpp"

using namespace semiq;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

const std::string kSweeps = SEMIQ_SOURCE_DIR "/sweeps/";

}  // namespace

TEST_SUITE("record") {

TEST_CASE("JSON round trip") {
  OutputRecord r;
  r.input = {{"generators", {84, 353, 454, 555, 656}}};
  r.p = 14;
  r.method = "generic";
  r.frobenius = 823;
  r.genus = 412;
  CHECK(record_from_json(to_json(r)) == r);

  r.genus.reset();
  r.method = "closed-form";
  r.verified = true;
  r.apery = std::vector<Int>{0, 82, 41};
  CHECK(to_json(r).at("genus").is_null());
  CHECK(record_from_json(nlohmann::json::parse(to_json(r).dump())) == r);
}

TEST_CASE("random records survive serialization") {
  semiq::testing::Rng rng(314);
  const std::vector<std::string> methods{"closed-form", "prop2.2", "generic", "oracle"};
  for (int i = 0; i < 300; ++i) {
    OutputRecord r;
    const auto gens = semiq::testing::random_generators(rng, 1, 1000, 5);
    r.input = rng.coin() ? nlohmann::json{{"generators", gens}}
                         : nlohmann::json{{"family", "aap"}, {"a", gens.front()}, {"k", rng.between(1, 9)}};
    r.p = rng.between(1, 50);
    r.method = rng.pick(methods);
    r.frobenius = rng.between(-1, INT64_MAX / 2);
    if (rng.coin()) r.genus = rng.between(0, 1'000'000'000'000);
    if (rng.coin()) r.verified = rng.coin();
    if (rng.coin()) {
      r.apery = std::vector<Int>{};
      for (Int k = rng.between(0, 20); k > 0; --k) r.apery->push_back(rng.between(0, 1'000'000));
    }
    CHECK(record_from_json(nlohmann::json::parse(to_json(r).dump())) == r);
  }
}

TEST_CASE("malformed records") {
  const auto bad = [](const char* text) {
    return semiq::testing::thrown_kind([&] { record_from_json(nlohmann::json::parse(text)); });
  };
  CHECK(bad(R"({"p":1,"method":"generic","frobenius":7,"genus":4})") == ErrorKind::Config);
  CHECK(bad(R"({"input":{},"p":1,"method":"magic","frobenius":7,"genus":4})") == ErrorKind::Config);
  CHECK(bad(R"({"input":{},"p":"1","method":"generic","frobenius":7,"genus":4})") == ErrorKind::Config);
  CHECK(bad(R"({"input":{},"p":1,"method":"generic","frobenius":7})") == ErrorKind::Config);
  CHECK(bad(R"([1,2])") == ErrorKind::Config);
  CHECK(bad(R"({"input":{},"p":1,"method":"generic","frobenius":7,"genus":4})") == std::nullopt);
}

TEST_CASE("CSV and text renderings") {
  OutputRecord r;
  r.input = {{"generators", {3, 5}}};
  r.method = "generic";
  r.frobenius = 7;
  r.genus = 4;
  std::ostringstream csv;
  write_csv_header(csv);
  write_csv_row(csv, r);
  CHECK(csv.str() == "input,p,method,frobenius,genus\n\"3,5\",1,generic,7,4\n");
  CHECK(input_label(r) == "3,5");
  r.input = {{"family", "gap-aap"}, {"a", 86}, {"h", 5}, {"d", 9}, {"K", 2}, {"k", 6}};
  CHECK(input_label(r) == "gap-aap a=86 h=5 d=9 K=2 k=6");
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("invariants") {
  auto r = run({"invariants", "3,5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("frobenius  7") != std::string::npos);
  CHECK(r.out.find("genus      4") != std::string::npos);

  r = run({"--json", "invariants", "84,353,454,555,656", "--apery"});
  CHECK(r.code == 0);
  const auto j = json_of(r);
  CHECK(j.at("apery").size() == 84);
  CHECK(j.at("method") == "generic");
  CHECK(record_from_json(j).apery->at(0) == 0);

  r = run({"invariants", "4,6"});
  CHECK(r.code == 2);
  CHECK(r.err.find("gcd is 2") != std::string::npos);

  CHECK(json_of(run({"invariants", "9,11,15", "--method", "oracle", "--json"})).at("frobenius") == 43);
  CHECK(json_of(run({"invariants", "5,3", "--method", "closed-form", "--json"})).at("genus") == 4);
  CHECK(json_of(run({"invariants", "3,5", "--verify", "--json"})).at("verified") == true);
  CHECK(run({"invariants", "3,x"}).code == 2);
  CHECK(run({"invariants", "3,,5"}).code == 2);
  CHECK(run({"invariants", "0,5"}).code == 2);
  CHECK(run({"invariants", "3,5", "--method", "oracle", "--apery"}).code == 2);
  CHECK(run({"invariants", "3,5,7", "--method", "closed-form"}).code == 2);
}

TEST_CASE("quotient") {
  auto j = json_of(run({"quotient", "84,353,454,555,656", "--p", "14", "--json"}));
  CHECK(j.at("frobenius") == 823);
  CHECK(j.at("genus") == 412);
  CHECK(j.at("method") == "generic");

  j = json_of(run({"quotient", "1120,7831,7849", "--p", "28", "--json", "--verify"}));
  CHECK(j.at("frobenius") == 156580);
  CHECK(j.at("genus") == 78376);
  CHECK(j.at("verified") == true);

  j = json_of(run({"quotient", "3,5", "--p", "3", "--json"}));
  CHECK(j.at("frobenius") == -1);
  CHECK(j.at("genus") == 0);

  j = json_of(run({"quotient", "84,353,454,555,656", "--p", "14", "--method", "prop2.2", "--apery", "--json"}));
  CHECK(j.at("apery") == nlohmann::json{0, 829, 656, 501, 328, 173});
  CHECK(j.at("method") == "prop2.2");

  j = json_of(run({"quotient", "15,4", "--p", "5", "--method", "closed-form", "--json"}));
  CHECK(j.at("frobenius") == 5);
  CHECK(j.at("method") == "closed-form");

  // The first listed generator is a1, even when it is not the smallest.
  j = json_of(run({"quotient", "15,4", "--p", "5", "--json"}));
  CHECK(j.at("genus") == 3);

  auto r = run({"quotient", "3,5", "--p", "2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--method oracle") != std::string::npos);
  CHECK(r.err.find("does not divide") != std::string::npos);
  j = json_of(run({"quotient", "3,5", "--p", "2", "--method", "oracle", "--json"}));
  CHECK(j.at("frobenius") == 2);
  CHECK(j.at("method") == "oracle");

  CHECK(run({"quotient", "3,5", "--p", "0"}).code == 2);
  CHECK(run({"quotient", "3,5"}).code == 2);
  CHECK(run({"quotient", "3,5", "--p", "3", "--method", "fast"}).code == 2);
}

TEST_CASE("family") {
  auto r = run({"family", "aap", "--a", "84", "--h", "3", "--d", "101", "--k", "4", "--p", "21", "--verify", "--json"});
  CHECK(r.code == 0);
  auto j = json_of(r);
  CHECK(j.at("frobenius") == 491);
  CHECK(j.at("genus") == 249);
  CHECK(j.at("verified") == true);
  CHECK(j.at("input").at("family") == "aap");

  j = json_of(run({"family", "odd-aap", "--a", "33", "--h", "4", "--d", "5", "--k", "2", "--p", "11", "--json"}));
  CHECK(j.at("frobenius") == 79);
  CHECK(j.at("genus").is_null());
  CHECK(j.at("method") == "closed-form");

  j = json_of(run({"family", "gap-aap", "--a", "300", "--h", "4", "--d", "7", "--K", "6", "--k", "13", "--p", "5", "--json"}));
  CHECK(j.at("frobenius") == 6127);
  CHECK(j.at("genus") == 3108);

  j = json_of(run({"family", "plus-minus", "--a", "1120", "--h", "7", "--d", "9", "--p", "28", "--json", "--verify"}));
  CHECK(j.at("genus") == 78376);

  j = json_of(run({"family", "scaled", "--a", "10", "--d", "9", "--B", "3,7", "--p", "2", "--json", "--verify"}));
  CHECK(j.at("verified") == true);
  CHECK(j.at("input").at("B") == nlohmann::json{3, 7});

  r = run({"--csv", "family", "gap-aap", "--a", "86", "--h", "5", "--d", "9", "--K", "2", "--k", "6", "--p", "43"});
  CHECK(r.out == "input,p,method,frobenius,genus\ngap-aap a=86 h=5 d=9 K=2 k=6,43,closed-form,87,44\n");

  r = run({"family", "aap", "--a", "84", "--h", "3", "--d", "101", "--k", "4", "--p", "5"});
  CHECK(r.code == 2);
  CHECK(r.err.find("p | a") != std::string::npos);
  r = run({"family", "odd-aap", "--a", "9", "--h", "1", "--d", "2", "--k", "1", "--p", "3"});
  CHECK(r.code == 2);
  CHECK(r.err.find("TPrimeOdd") != std::string::npos);
  CHECK(run({"family", "aap", "--a", "84", "--h", "3", "--d", "101", "--p", "21"}).code == 2);
  CHECK(run({"family", "plus-minus", "--a", "6", "--h", "1", "--d", "1", "--k", "2", "--p", "1"}).code == 2);
  CHECK(run({"family", "triangle", "--a", "6", "--p", "1"}).code == 2);
  CHECK(run({"family", "--help"}).code == 0);
}

TEST_CASE("apery and ob") {
  auto j = json_of(run({"apery", "33,137,147,157", "--p", "11", "--json"}));
  CHECK(j.at("apery") == nlohmann::json{0, 82, 41});
  j = json_of(run({"apery", "33,137,147,157", "--p", "11", "--method", "prop2.2", "--json"}));
  CHECK(j.at("apery") == nlohmann::json{0, 82, 41});
  j = json_of(run({"apery", "5,3", "--json"}));
  CHECK(j.at("apery") == nlohmann::json{0, 6, 12, 3, 9});
  CHECK(run({"apery", "3,5", "--method", "oracle"}).code == 2);
  auto r = run({"apery", "1000003,1000004"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--force") != std::string::npos);

  j = json_of(run({"ob", "1,2,3,4", "--M", "10", "--witness", "--json"}));
  CHECK(j.at("value") == 3);
  CHECK(j.at("witness") == nlohmann::json{0, 1, 0, 2});
  j = json_of(run({"ob", "3,5", "--M", "1", "--json"}));
  CHECK(j.at("value").is_null());
  r = run({"ob", "1,2,3,4", "--M", "7"});
  CHECK(r.out.find("min parts  2") != std::string::npos);
  CHECK(run({"ob", "1,2", "--M", "-1"}).code == 2);
  CHECK(run({"ob", "0,2", "--M", "3"}).code == 2);
}

TEST_CASE("sweep") {
  auto r = run({"sweep", kSweeps + "worked-examples.toml", "--jobs", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0 mismatches") != std::string::npos);

  const auto out_path = std::filesystem::temp_directory_path() / "semiq-scaling-report.json";
  r = run({"sweep", kSweeps + "scaling-identity.toml", "--out", out_path.string()});
  CHECK(r.code == 0);
  std::ifstream report_file(out_path);
  const auto report = nlohmann::json::parse(report_file);
  CHECK(report.at("mismatches") == 0);
  CHECK(report.at("instances") == 600);

  const auto bad = temp_file("semiq-bad.toml", "[[plan]]\nvariant = \"aap\"\nsamples = oops\n");
  r = run({"sweep", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run({"sweep", "/nonexistent.toml"}).code == 2);

  const auto wrong = temp_file("semiq-wrong.toml",
                               "[[instance]]\nvariant = \"two-gen\"\na1 = 15\na2 = 4\np = 5\nfrobenius = 6\n");
  r = run({"sweep", wrong.string(), "--json"});
  CHECK(r.code == 3);
  CHECK(json_of(r).at("mismatches") == 1);
  CHECK(r.err.find("first counterexample") != std::string::npos);
  CHECK(r.err.find("\"a1\":15") != std::string::npos);
}

TEST_CASE("memory cap from the environment") {
  ::setenv("SEMIQ_MEMORY_CAP", "1000", 1);
  auto r = run({"quotient", "84,353,454,555,656", "--p", "14", "--method", "oracle"});
  CHECK(r.code == 2);
  CHECK(r.err.find("OverflowError") != std::string::npos);
  CHECK(run({"quotient", "3,5", "--p", "2", "--method", "oracle"}).code == 0);
  ::setenv("SEMIQ_MEMORY_CAP", "lots", 1);
  CHECK(run({"quotient", "3,5", "--p", "2", "--method", "oracle"}).code == 2);
  ::unsetenv("SEMIQ_MEMORY_CAP");
  CHECK(run({"quotient", "84,353,454,555,656", "--p", "14", "--method", "oracle"}).code == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--json", "--csv", "invariants", "3,5"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

}  // TEST_SUITE
