#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "susy/check.hpp"

// Prints one line per criterion. Exit status is 0 only when every failing
// criterion is listed after --known-red.
int main(int argc, char** argv) {
  std::set<std::string> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--known-red" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string id; std::getline(ss, id, ',');) known.insert(id);
    } else {
      std::cerr << "usage: acceptance [--known-red ID,ID,...]\n";
      return 2;
    }
  }
  const auto results = susy::cli::run_acceptance();
  int failed = 0, unexpected = 0;
  for (const auto& r : results) {
    std::cout << susy::cli::format_result(r) << '\n';
    if (!r.passed) {
      ++failed;
      if (!known.contains(r.id)) ++unexpected;
    }
  }
  std::cout << results.size() - static_cast<std::size_t>(failed) << " passed, " << failed << " failed";
  if (failed > unexpected) std::cout << " (" << failed - unexpected << " known red)";
  std::cout << '\n';
  return unexpected == 0 ? 0 : 1;
}
