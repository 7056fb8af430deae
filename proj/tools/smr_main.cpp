#include <cstdio>

#include "smr/kernels/kernels.hpp"

int main() {
  std::printf("smr (kernel backend: %s)\n",
              smr::kern::backend_name(smr::kern::active_backend()));
  return 0;
}
