#include "smr/kernels/kernels.hpp"

#include "kernel_table.hpp"

// Scalar backend: thin bindings of the reference templates at float. These
// are the semantics the SIMD variants are tested against.

namespace smr::kern::detail {
namespace {

float s_dot(const float* a, const float* b, int n) { return ref::dot(a, b, n); }
void s_axpy(float alpha, const float* x, float* y, int n) {
  ref::axpy(alpha, x, y, n);
}
void s_scale(float* x, float alpha, int n) { ref::scale(x, alpha, n); }
void s_vadd(const float* a, const float* b, float* out, int n) {
  ref::vadd(a, b, out, n);
}
void s_vmul(const float* a, const float* b, float* out, int n) {
  ref::vmul(a, b, out, n);
}
float s_vsum(const float* x, int n) { return ref::vsum(x, n); }
void s_elu_fwd(const float* x, float* y, int n) { ref::elu_fwd(x, y, n); }
void s_elu_bwd(const float* y, const float* dy, float* dx, int n) {
  ref::elu_bwd(y, dy, dx, n);
}
void s_gemm_nn(int M, int N, int K, const float* A, int lda, const float* B,
               int ldb, float* C, int ldc, bool acc) {
  ref::gemm_nn(M, N, K, A, lda, B, ldb, C, ldc, acc);
}
void s_gemm_nt(int M, int N, int K, const float* A, int lda, const float* B,
               int ldb, float* C, int ldc, bool acc) {
  ref::gemm_nt(M, N, K, A, lda, B, ldb, C, ldc, acc);
}
void s_gemm_tn(int M, int N, int K, const float* A, int lda, const float* B,
               int ldb, float* C, int ldc, bool acc) {
  ref::gemm_tn(M, N, K, A, lda, B, ldb, C, ldc, acc);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {s_dot,     s_axpy,    s_scale,   s_vadd,
                                s_vmul,    s_vsum,    s_elu_fwd, s_elu_bwd,
                                s_gemm_nn, s_gemm_nt, s_gemm_tn};
  return t;
}

}  // namespace smr::kern::detail
