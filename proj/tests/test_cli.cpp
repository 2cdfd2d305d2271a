#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args, const std::string& stdin_text = {}) {
  const std::string input_path = "/tmp/slcorners_cli_input.json";
  {
    std::ofstream out(input_path);
    out << stdin_text;
  }
  const std::string command =
      std::string(SLCORNERS_CLI_PATH) + " " + args + " < " + input_path + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  std::array<char, 4096> buffer{};
  size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

const std::string kIdentity2 = R"({"n":2,"rows":[[1.0,0.0],[0.0,1.0]]})";
const std::string kGraded2 = R"({"n":2,"rows":[[10.0,0.0],[0.0,0.1]]})";

}  // namespace

TEST_CASE("cli roots") {
  const auto ok = run_cli("roots --n 3 --json");
  CHECK(ok.exit_code == 0);
  const auto doc = nlohmann::json::parse(ok.output);
  CHECK(doc["sigma"] == nlohmann::json({2, 2}));
  CHECK(doc["positive_roots"].size() == 3);

  CHECK(run_cli("roots --n 1 --json").exit_code == 0);
  CHECK(run_cli("roots --n 0").exit_code == 2);
}

TEST_CASE("cli decompose") {
  const auto kak = run_cli("decompose --mode kak", kIdentity2);
  CHECK(kak.exit_code == 0);
  const auto doc = nlohmann::json::parse(kak.output);
  CHECK(doc["residual"].get<double>() < 1e-12);
  CHECK(doc["a"][0].get<double>() == 1.0);

  const auto iw = run_cli("decompose --mode iwasawa", kGraded2);
  CHECK(iw.exit_code == 0);
  CHECK(nlohmann::json::parse(iw.output)["residual"].get<double>() < 1e-10);

  CHECK(run_cli("decompose --mode horospherical", kIdentity2).exit_code == 2);
  CHECK(run_cli("decompose --mode horospherical --subset \"\"", kIdentity2).exit_code == 0);
  CHECK(run_cli("decompose --mode kak", "{\"n\":2,\"rows\":[[1,0],[0,-1]]}").exit_code == 2);
}

TEST_CASE("cli chart pipeline") {
  const auto decomposed = run_cli("chart decompose --eps-break 0.05", kGraded2);
  CHECK(decomposed.exit_code == 0);
  auto doc = nlohmann::json::parse(decomposed.output);
  CHECK(doc["breaks"] == nlohmann::json({1}));
  CHECK(doc["tau"][0].get<double>() == doctest::Approx(0.01));

  const auto rebuilt = run_cli("chart reconstruct", decomposed.output);
  CHECK(rebuilt.exit_code == 0);
  const auto matrix = nlohmann::json::parse(rebuilt.output);
  CHECK(matrix["rows"][0][0].get<double>() == doctest::Approx(10.0));

  const auto inverted = run_cli("chart invert", decomposed.output);
  CHECK(inverted.exit_code == 0);
  CHECK(nlohmann::json::parse(inverted.output)["tau"][0].get<double>() ==
        doctest::Approx(0.01));

  // Boundary documents (tau = 0) reconstruct to the unit-norm face
  // representative.
  doc["tau"][0] = 0.0;
  const auto boundary = run_cli("chart reconstruct", doc.dump());
  CHECK(boundary.exit_code == 0);
  const auto rep = nlohmann::json::parse(boundary.output);
  double norm2 = 0.0;
  for (const auto& row : rep["rows"])
    for (const auto& entry : row) norm2 += entry.get<double>() * entry.get<double>();
  CHECK(norm2 == doctest::Approx(1.0));
}

TEST_CASE("cli faces") {
  const auto result = run_cli("faces --n 3 --json");
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  REQUIRE(doc.size() == 4);
  std::multiset<int> dims;
  for (const auto& face : doc) dims.insert(face["dim_face"].get<int>());
  CHECK(dims == std::multiset<int>({6, 7, 7, 8}));
}

TEST_CASE("cli limit") {
  const std::string k1 = "/tmp/slcorners_k1.json";
  const std::string h = "/tmp/slcorners_h.json";
  {
    std::ofstream(k1) << kIdentity2;
    std::ofstream(h) << R"({"n":2,"rows":[[0.5,0.0],[0.0,-0.5]]})";
  }
  const auto result = run_cli("limit --k1 " + k1 + " --H " + h + " --k2 " + k1);
  CHECK(result.exit_code == 0);
  const auto doc = nlohmann::json::parse(result.output);
  CHECK(doc["face"]["S"].empty());
  CHECK(doc["face"]["codim"] == 1);
}

TEST_CASE("cli verify and determinism") {
  CHECK(run_cli("verify brackets --n 4").exit_code == 0);

  const auto first = run_cli("verify haar --n 2 --seed 11 --json");
  CHECK(first.exit_code == 0);
  const auto second = run_cli("verify haar --n 2 --seed 11 --json");
  CHECK(first.output == second.output);  // byte-identical under the same seed

  const auto doc = nlohmann::json::parse(first.output);
  CHECK(doc[0]["slope"].get<double>() == doctest::Approx(-1.0).epsilon(0.02));

  const auto inv = run_cli("verify inversion --n 2 --samples 25 --seed 3 --json");
  CHECK(inv.exit_code == 0);
  CHECK(nlohmann::json::parse(inv.output)["passed"] == true);

  const auto rank = run_cli("verify rank --n 2 --samples 5 --seed 3 --json");
  CHECK(rank.exit_code == 0);
  const auto rank_doc = nlohmann::json::parse(rank.output);
  CHECK(rank_doc["axiom"] == "D3");
  CHECK(rank_doc["passed"] == true);

  const auto bnormal = run_cli("verify bnormal --n 2 --seed 3 --json");
  CHECK(bnormal.exit_code == 0);
  CHECK(nlohmann::json::parse(bnormal.output)["axiom"] == "D2");

  const auto minimality = run_cli("verify minimality --n 2 --samples 10 --seed 3 --json");
  CHECK(minimality.exit_code == 0);
  CHECK(nlohmann::json::parse(minimality.output)["axiom"] == "D4");

  CHECK(run_cli("verify nonsense --n 2").exit_code == 2);
}
