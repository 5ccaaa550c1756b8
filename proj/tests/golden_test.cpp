// Compares every corpus command against its frozen output. Pass --update to
// regenerate the golden files.

#include <cstring>
#include <iostream>

#include "support/golden.hpp"

int main(int argc, char** argv) {
  const bool update = argc > 1 && std::strcmp(argv[1], "--update") == 0;
  const auto outcomes = golden::run_all(CUSPCOBORD_SOURCE_DIR, update);
  int failed = 0;
  for (const auto& o : outcomes) {
    if (!o.matched) {
      ++failed;
      std::cout << "MISMATCH " << o.name << ": " << o.detail << "\n";
    }
  }
  std::cout << outcomes.size() - failed << "/" << outcomes.size() << " golden commands "
            << (update ? "written" : "matched") << "\n";
  return failed == 0 ? 0 : 1;
}
