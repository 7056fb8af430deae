#include "smr/kernels/kernels.hpp"

#include <atomic>
#include <stdexcept>

#include "kernel_table.hpp"

namespace smr::kern {

namespace detail {
namespace {

bool avx2_supported() {
#if defined(SMR_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &scalar_table();
    case Backend::avx2:
#if defined(SMR_HAVE_AVX2)
      return &avx2_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

struct Init {
  Init() {
    const Backend b = avx2_supported() ? Backend::avx2 : Backend::scalar;
    g_backend.store(b);
    g_table.store(table_for(b));
  }
} g_init;

const KernelTable& table() { return *g_table.load(std::memory_order_relaxed); }

}  // namespace
}  // namespace detail

Backend active_backend() { return detail::g_backend.load(); }

Backend best_supported_backend() {
  return detail::avx2_supported() ? Backend::avx2 : Backend::scalar;
}

void set_backend(Backend b) {
  const detail::KernelTable* t = detail::table_for(b);
  if (t == nullptr)
    throw std::runtime_error(std::string("kernel backend not supported: ") +
                             backend_name(b));
  if (b == Backend::avx2 && !detail::avx2_supported())
    throw std::runtime_error("kernel backend not supported on this cpu: avx2");
  detail::g_backend.store(b);
  detail::g_table.store(t);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "?";
}

float dot_f32(const float* a, const float* b, int n) {
  return detail::table().dot(a, b, n);
}
void axpy_f32(float alpha, const float* x, float* y, int n) {
  detail::table().axpy(alpha, x, y, n);
}
void scale_f32(float* x, float alpha, int n) {
  detail::table().scale(x, alpha, n);
}
void vadd_f32(const float* a, const float* b, float* out, int n) {
  detail::table().vadd(a, b, out, n);
}
void vmul_f32(const float* a, const float* b, float* out, int n) {
  detail::table().vmul(a, b, out, n);
}
float vsum_f32(const float* x, int n) { return detail::table().vsum(x, n); }
void elu_fwd_f32(const float* x, float* y, int n) {
  detail::table().elu_fwd(x, y, n);
}
void elu_bwd_f32(const float* y, const float* dy, float* dx, int n) {
  detail::table().elu_bwd(y, dy, dx, n);
}
void gemm_nn_f32(int M, int N, int K, const float* A, int lda, const float* B,
                 int ldb, float* C, int ldc, bool accumulate) {
  detail::table().gemm_nn(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
}
void gemm_nt_f32(int M, int N, int K, const float* A, int lda, const float* B,
                 int ldb, float* C, int ldc, bool accumulate) {
  detail::table().gemm_nt(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
}
void gemm_tn_f32(int M, int N, int K, const float* A, int lda, const float* B,
                 int ldb, float* C, int ldc, bool accumulate) {
  detail::table().gemm_tn(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
}

}  // namespace smr::kern
