// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <iostream>

#include "nilgcs/verification.hpp"

int main() {
  bool all = true;
  for (const auto& r : nilgcs::run_acceptance()) {
    std::cout << (r.pass() ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title;
    if (!r.note.empty()) std::cout << " (" << r.note << ")";
    std::cout << "\n";
    for (const auto& f : r.failures()) std::cout << "       " << f << "\n";
    all = all && r.pass();
  }
  return all ? 0 : 1;
}
