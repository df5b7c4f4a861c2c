// Renders the live cost-model rules to COST_LEDGER.md so the documented
// formulas can never drift from the implementation.
#include <iostream>
#include <string>

#include "qdl/costmodel.hpp"
#include "qdl/io.hpp"

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "COST_LEDGER.md";
  qdl::write_text_file(path, qdl::cost_ledger_markdown());
  std::cout << "wrote " << path << "\n";
  return 0;
}
