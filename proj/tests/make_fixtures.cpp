// Writes synthetic corpora and a run-grid config for the CLI tests.

#include <cstdlib>
#include <iostream>

#include "support/synthetic.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::remove_all(dir);
  sevote::testing::write_reference_fixtures(dir);
  sevote::testing::write_emotion_fixture(dir / "emotions.csv", 400, 5);
  std::cout << "fixtures written to " << dir.string() << '\n';
  return 0;
}
