#include <iostream>

#include "cgr/partition.hpp"
#include "cgr/viral.hpp"
#include "cgr/oracle.hpp"
#include "cgr/generators.hpp"

int main() {
  std::cout << "cgr: placeholder\n";
  return 0;
}
