// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Also reachable as `squashlab --mode verify`.

#include <iostream>

#include "squashlab/verify.hpp"

int main() {
  const bool ok = squashlab::verify::run_all(std::cout);
  return ok ? 0 : 1;
}
