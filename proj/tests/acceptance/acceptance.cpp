#include <cstring>
#include <iostream>

#include "verification.hpp"

int main(int argc, char** argv) {
  namespace v = classicality::verification;
  const bool full = argc > 1 && std::strcmp(argv[1], "--full") == 0;
  const auto results = v::run_all(full ? v::Level::Full : v::Level::Fast,
                                  [](const v::CheckResult& r) { std::cout << v::format(r) << std::endl; });
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " acceptance criteria passed\n";
  return failed == 0 ? 0 : 1;
}
