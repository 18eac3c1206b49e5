// Acceptance run: criteria 1-10 through the full suite, criterion 11 through
// two CLI invocations whose outputs must match byte for byte.
// Prints one PASS/FAIL line per criterion; exits nonzero if any fails.

#include "ffavg/suite.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sys/wait.h>
#include <unistd.h>

namespace {

std::string
slurp(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  return { std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>() };
}

int
run(const std::string& command)
{
  const int status = std::system(command.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

ffavg::CheckResult
check_reproducible_report(const std::string& cli)
{
  namespace fs = std::filesystem;
  ffavg::CheckResult r{ 11, "reproducible report", false, {}, {} };
  const auto dir = fs::temp_directory_path() / ("ffavg_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto first = dir / "first.json";
  const auto second = dir / "second.json";
  const auto cmd = [&](const fs::path& out) {
    return "\"" + cli + "\" report --suite quick --seed 7 --out \"" + out.string() + "\" 2>/dev/null";
  };
  const int s1 = run(cmd(first));
  const int s2 = run(cmd(second));
  const auto a = slurp(first);
  const auto b = slurp(second);
  fs::remove_all(dir);

  // Exit 0 or 1 is a verdict; anything else means the run itself broke.
  const bool ran = (s1 == 0 || s1 == 1) && s1 == s2;
  bool well_formed = false;
  try {
    const auto j = ffavg::Json::parse(a);
    well_formed = j.at("schema_version") == ffavg::schema_version && j.contains("verdict") && j.at("seed") == 7;
  } catch (const std::exception&) {
    well_formed = false;
  }
  r.pass = ran && well_formed && !a.empty() && a == b;
  r.summary = "two runs of report --suite quick --seed 7: exit " + std::to_string(s1) + "/" + std::to_string(s2) +
              ", " + std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "DIFFERENT");
  return r;
}

} // namespace

int
main(int argc, char** argv)
{
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to ffavg cli>\n";
    return 2;
  }
  ffavg::SuiteConfig cfg;
  cfg.name = "full";
  cfg.seed = 1;
  cfg.jobs = 1;

  int failures = 0;
  const auto report = [&](const ffavg::CheckResult& c, double seconds) {
    failures += c.pass ? 0 : 1;
    std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << c.summary
              << " [" << ffavg::format_double(std::round(seconds * 10) / 10) << " s]" << std::endl;
  };

  const auto& checks = ffavg::suite_checks();
  for (const auto& check : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    ffavg::CheckResult c;
    try {
      c = check(cfg);
    } catch (const std::exception& e) {
      c.id = static_cast<int>(&check - checks.data()) + 1;
      c.title = "exception";
      c.summary = e.what();
    }
    report(c, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  const auto t0 = std::chrono::steady_clock::now();
  report(check_reproducible_report(argv[1]),
         std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
