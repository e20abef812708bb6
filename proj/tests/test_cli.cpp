#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "latinpat/cli.hpp"
#include "latinpat/io.hpp"

using namespace latinpat;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  // Keep the test hermetic whatever the caller's environment holds.
  args.insert(args.begin(), "--no-cache");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Run run_cached(const std::filesystem::path& dir, std::vector<std::string> args) {
  args.insert(args.begin(), {"--cache-dir", dir.string()});
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("count") {
  auto r = run({"count", "--order", "4", "--avoid", "123"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["count"] == 4);
  r = run({"count", "--order", "4", "--avoid-cols", "123"});
  CHECK(json::parse(r.out)["count"] == 24);
  r = run({"count", "--order", "4", "--avoid-rows", "123", "--avoid-cols", "321"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["spec"]["rows"] == json::array({"123"}));
  r = run({"--format", "csv", "count", "--order", "3"});
  CHECK(r.out.rfind("order,rows,cols,symbols,count,nodes_explored\n3,,,,12,", 0) == 0);
  r = run({"--format", "table", "count", "--order", "3", "--avoid", "123,321"});
  CHECK(r.out.rfind("order    3\nspec     rows=123,321;cols=123,321;symbols=\n", 0) == 0);
  r = run({"--timing", "count", "--order", "3"});
  CHECK(json::parse(r.out).contains("elapsed_ms"));
}

TEST_CASE("exit codes") {
  CHECK(run({"count", "--order", "0", "--avoid", "123"}).code == cli::kInvalidInput);
  CHECK(run({"count", "--order", "0"}).err.find("order") != std::string::npos);
  CHECK(run({"count", "--order", "4", "--avoid", "1a3"}).code == cli::kInvalidInput);
  CHECK(run({"count", "--order", "4", "--avoid", "1224"}).code == cli::kInvalidInput);
  CHECK(run({"count", "--order", "7"}).code == cli::kInfeasible);
  CHECK(run({"--max-order", "7", "count", "--order", "8", "--avoid", "123"}).code == cli::kInfeasible);
  CHECK(run({"count"}).code == cli::kInvalidInput);
  CHECK(run({"frobnicate"}).code == cli::kInvalidInput);
  CHECK(run({}).code == cli::kInvalidInput);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"--format", "grid", "count", "--order", "3"}).code == cli::kInvalidInput);
  CHECK(run({"lambda", "--order", "6", "--exhaustive"}).code == cli::kInfeasible);
  CHECK(run({"construct", "s3", "--order", "3", "--pattern", "1234", "--start", "1"}).code == cli::kInvalidInput);
  CHECK(run({"check", "--square", "/nonexistent/square.txt", "--pattern", "1"}).code == cli::kInvalidInput);
}

TEST_CASE("construct") {
  auto r = run({"construct", "connolly", "--root", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == testing::golden("figure4.txt"));
  r = run({"construct", "prop2", "--first-row", "2134", "--pattern", "123"});
  CHECK(r.out == testing::golden("figure1_completed.txt"));
  r = run({"construct", "s3", "--order", "1", "--pattern", "321", "--start", "1"});
  CHECK(r.out == "1\n");
  r = run({"construct", "s3", "--order", "3", "--pattern", "123"});
  CHECK(r.out == "1 3 2\n3 2 1\n2 1 3\n\n2 1 3\n1 3 2\n3 2 1\n\n3 2 1\n2 1 3\n1 3 2\n");
  r = run({"--format", "json", "construct", "s3", "--order", "2", "--pattern", "132"});
  CHECK(r.out == "{\"grid\":[[1,2],[2,1]],\"order\":2}\n{\"grid\":[[2,1],[1,2]],\"order\":2}\n");
  r = run({"construct", "prop2", "--first-row", "2134", "--pattern", "231"});
  CHECK(r.code == 0);
  CHECK(parse_square(r.out).row(4)[0] == 2);
}

TEST_CASE("enumerate streams JSON lines") {
  const auto r = run({"enumerate", "--order", "3", "--avoid", "123"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    CHECK(square_from_json(json::parse(line)).order() == 3);
    ++lines;
  }
  CHECK(lines == 3);
  CHECK(run({"enumerate", "--order", "4", "--limit", "5"}).out.find("\n") != std::string::npos);
  const auto limited = run({"enumerate", "--order", "4", "--limit", "5"});
  CHECK(std::count(limited.out.begin(), limited.out.end(), '\n') == 5);
}

TEST_CASE("lambda") {
  auto r = run({"lambda", "--order", "3", "--exhaustive"});
  CHECK(json::parse(r.out)["exact_value"] == 3);
  r = run({"lambda", "--order", "9", "--bounds"});
  const auto j = json::parse(r.out);
  CHECK(j["lower_bound"] == 4);
  CHECK(j["upper_bound"] == 4);
  CHECK(j["exact_value"] == 4);
  r = run({"--format", "csv", "lambda", "--order", "7", "--bounds"});
  CHECK(r.out == "order,lower_bound,upper_bound,exact_value,method\n7,3,4,,witness-capped\n");
}

TEST_CASE("wilf") {
  auto r = run({"wilf", "--length", "3", "--order", "4"});
  CHECK(json::parse(r.out)["class_count"] == 1);
  r = run({"wilf", "--length", "1", "--order", "3"});
  const auto j = json::parse(r.out);
  CHECK(j["class_count"] == 1);
  CHECK(j["classes"][0]["count"] == 0);
  r = run({"--format", "csv", "wilf", "--length", "3", "--order", "3", "--mode", "per-pattern"});
  CHECK(r.out == "pattern,count,class_id\n123,3,0\n132,3,0\n213,3,0\n231,3,0\n312,3,0\n321,3,0\n");
}

TEST_CASE("check and rect-check") {
  const auto fig4 = temp_file("latinpat_fig4.txt", testing::golden("figure4.txt"));
  const auto rect = temp_file("latinpat_rect.txt", testing::golden("section6_rectangle.txt"));
  auto r = run({"check", "--square", fig4.string(), "--rectangle", rect.string()});
  auto j = json::parse(r.out);
  CHECK(j["contained"] == true);
  CHECK(j["witness"]["rows"] == json::array({2, 7}));
  CHECK(j["witness"]["cols"] == json::array({1, 5, 9}));
  r = run({"rect-check", "--square", fig4.string(), "--rectangle", rect.string()});
  CHECK(json::parse(r.out)["witness"]["cols"] == json::array({1, 5, 9}));
  r = run({"check", "--square", fig4.string(), "--pattern", "1"});
  CHECK(json::parse(r.out)["contained"] == true);
  r = run({"check", "--square", fig4.string(), "--pattern", "12345"});
  CHECK(json::parse(r.out)["contained"] == false);

  const auto cyclic = temp_file("latinpat_cyclic.json", R"({"order":4,"grid":[[2,1,4,3],[1,4,3,2],[4,3,2,1],[3,2,1,4]]})");
  r = run({"check", "--square", cyclic.string(), "--pattern", "123"});
  j = json::parse(r.out);
  CHECK(j["contained"] == false);
  CHECK(j["witness"].is_null());
  r = run({"check", "--square", cyclic.string(), "--pattern", "132"});
  j = json::parse(r.out);
  CHECK(j["witness"]["line"] == "row");
  CHECK(j["witness"]["index"] == 1);
  CHECK(j["witness"]["positions"] == json::array({1, 3, 4}));
  r = run({"check", "--square", cyclic.string(), "--pattern", "123", "--symbols"});
  CHECK(r.code == 0);
  CHECK(run({"check", "--square", cyclic.string()}).code == cli::kInvalidInput);
  const auto bad = temp_file("latinpat_bad.txt", "1 2\n1 2\n");
  r = run({"check", "--square", bad.string(), "--pattern", "1"});
  CHECK(r.code == cli::kInvalidInput);
  CHECK(r.err.find("column 1 repeats symbol 1") != std::string::npos);
}

TEST_CASE("verify") {
  auto r = run({"verify", "theorem6", "--order", "4"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["formula_count"] == 400);
  CHECK(run({"verify", "corollary6", "--order", "4"}).code == 0);
  CHECK(run({"verify", "remark4", "--order", "4"}).code == 0);
  r = run({"verify", "es", "--length", "5", "--p", "2", "--q", "2"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["cases"] == 120);
  CHECK(run({"verify", "es", "--length", "4", "--p", "2", "--q", "2"}).code == cli::kInvalidInput);
}

TEST_CASE("--jobs never changes output bytes") {
  const std::vector<std::vector<std::string>> commands = {
      {"count", "--order", "5", "--avoid", "1324"},
      {"enumerate", "--order", "4", "--avoid-cols", "231"},
      {"enumerate", "--order", "4"},
      {"wilf", "--length", "3", "--order", "5"},
      {"lambda", "--order", "4", "--exhaustive"},
      {"verify", "corollary6", "--order", "4"},
  };
  for (const auto& cmd : commands) {
    std::vector<std::string> one = {"--jobs", "1"};
    std::vector<std::string> eight = {"--jobs", "8"};
    one.insert(one.end(), cmd.begin(), cmd.end());
    eight.insert(eight.end(), cmd.begin(), cmd.end());
    const auto a = run(one);
    const auto b = run(eight);
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);
  }
}

TEST_CASE("cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "latinpat_cli_cache_test";
  std::filesystem::remove_all(dir);
  const std::vector<std::string> count = {"count", "--order", "4", "--avoid", "1234"};
  const auto first = run_cached(dir, count);
  REQUIRE(first.code == 0);
  CHECK(json::parse(first.out)["count"] == 400);
  CHECK(std::filesystem::exists(dir / "results.jsonl"));
  const auto second = run_cached(dir, count);
  CHECK(second.out == first.out);
  std::vector<std::string> verify = {"--verify-cache"};
  verify.insert(verify.end(), count.begin(), count.end());
  CHECK(run_cached(dir, verify).code == 0);

  const auto wilf = run_cached(dir, {"wilf", "--length", "3", "--order", "4"});
  CHECK(run_cached(dir, {"wilf", "--length", "3", "--order", "4"}).out == wilf.out);
  CHECK(run_cached(dir, {"--verify-cache", "wilf", "--length", "3", "--order", "4"}).code == 0);

  // Tamper with the stored count: a plain lookup trusts it, verification refuses it.
  std::string text;
  {
    std::ifstream in(dir / "results.jsonl");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto pos = text.find("\"count\":400");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 11, "\"count\":401");
  std::ofstream(dir / "results.jsonl") << text;
  CHECK(json::parse(run_cached(dir, count).out)["count"] == 401);
  const auto mismatch = run_cached(dir, verify);
  CHECK(mismatch.code == cli::kInternalError);
  CHECK(mismatch.err.find("differs") != std::string::npos);
  std::vector<std::string> nocache = {"--no-cache"};
  nocache.insert(nocache.end(), count.begin(), count.end());
  CHECK(json::parse(run_cached(dir, nocache).out)["count"] == 400);
  std::filesystem::remove_all(dir);
}

TEST_CASE("progress goes to stderr") {
  const auto r = run({"--progress", "json", "--jobs", "2", "count", "--order", "4"});
  CHECK(r.code == 0);
  CHECK(r.err.find("\"event\":\"progress\"") != std::string::npos);
  CHECK(json::parse(r.out)["count"] == 576);
}
