#pragma once

// Private function-pointer table shared by the kernel backends and the
// runtime dispatcher. Not installed; include only from src/kernels.

namespace smr::kern::detail {

struct KernelTable {
  float (*dot)(const float*, const float*, int);
  void (*axpy)(float, const float*, float*, int);
  void (*scale)(float*, float, int);
  void (*vadd)(const float*, const float*, float*, int);
  void (*vmul)(const float*, const float*, float*, int);
  float (*vsum)(const float*, int);
  void (*elu_fwd)(const float*, float*, int);
  void (*elu_bwd)(const float*, const float*, float*, int);
  void (*gemm_nn)(int, int, int, const float*, int, const float*, int, float*,
                  int, bool);
  void (*gemm_nt)(int, int, int, const float*, int, const float*, int, float*,
                  int, bool);
  void (*gemm_tn)(int, int, int, const float*, int, const float*, int, float*,
                  int, bool);
};

const KernelTable& scalar_table();
#if defined(SMR_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace smr::kern::detail
