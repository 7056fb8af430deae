#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>

namespace smr::kern {

// Data-parallel inner loops used by the encoders and losses. Every f32
// kernel has a scalar reference implementation and (on x86-64) an AVX2+FMA
// variant; the active variant is picked once at startup from cpuid and can
// be overridden for equivalence testing. Other element types (double is
// used by the finite-difference test instantiations) always take the
// generic scalar path.

enum class Backend { scalar, avx2 };

Backend active_backend();
void set_backend(Backend b);       // throws if unsupported on this machine
Backend best_supported_backend();
const char* backend_name(Backend b);

// ---- dispatched f32 kernels ----

float dot_f32(const float* a, const float* b, int n);
void axpy_f32(float alpha, const float* x, float* y, int n);   // y += alpha*x
void scale_f32(float* x, float alpha, int n);
void vadd_f32(const float* a, const float* b, float* out, int n);
void vmul_f32(const float* a, const float* b, float* out, int n);
float vsum_f32(const float* x, int n);
void elu_fwd_f32(const float* x, float* y, int n);
// dx = dy * elu'(x); elu' recovered from the forward output y.
void elu_bwd_f32(const float* y, const float* dy, float* dx, int n);

// Row-major GEMM family. C is M x N with leading dimension ldc.
//   nn: C (+)= A[M,K] * B[K,N]
//   nt: C (+)= A[M,K] * B[N,K]^T
//   tn: C (+)= A[K,M]^T * B[K,N]
// accumulate=false overwrites C, true adds into it.
void gemm_nn_f32(int M, int N, int K, const float* A, int lda, const float* B,
                 int ldb, float* C, int ldc, bool accumulate);
void gemm_nt_f32(int M, int N, int K, const float* A, int lda, const float* B,
                 int ldb, float* C, int ldc, bool accumulate);
void gemm_tn_f32(int M, int N, int K, const float* A, int lda, const float* B,
                 int ldb, float* C, int ldc, bool accumulate);

// ---- scalar reference implementations (also the generic-T path) ----

namespace ref {

template <typename T>
T dot(const T* a, const T* b, int n) {
  T acc = T(0);
  for (int i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

template <typename T>
void axpy(T alpha, const T* x, T* y, int n) {
  for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

template <typename T>
void scale(T* x, T alpha, int n) {
  for (int i = 0; i < n; ++i) x[i] *= alpha;
}

template <typename T>
void vadd(const T* a, const T* b, T* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

template <typename T>
void vmul(const T* a, const T* b, T* out, int n) {
  for (int i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

template <typename T>
T vsum(const T* x, int n) {
  T acc = T(0);
  for (int i = 0; i < n; ++i) acc += x[i];
  return acc;
}

template <typename T>
void elu_fwd(const T* x, T* y, int n) {
  for (int i = 0; i < n; ++i)
    y[i] = x[i] > T(0) ? x[i] : static_cast<T>(std::expm1(static_cast<double>(x[i])));
}

template <typename T>
void elu_bwd(const T* y, const T* dy, T* dx, int n) {
  // For y = elu(x) with alpha=1: elu'(x) = 1 when x>0, else exp(x) = y+1.
  for (int i = 0; i < n; ++i) dx[i] = dy[i] * (y[i] > T(0) ? T(1) : y[i] + T(1));
}

template <typename T>
void gemm_nn(int M, int N, int K, const T* A, int lda, const T* B, int ldb,
             T* C, int ldc, bool accumulate) {
  for (int i = 0; i < M; ++i) {
    T* c = C + static_cast<size_t>(i) * ldc;
    if (!accumulate)
      for (int j = 0; j < N; ++j) c[j] = T(0);
    const T* a = A + static_cast<size_t>(i) * lda;
    for (int k = 0; k < K; ++k) {
      const T aik = a[k];
      const T* b = B + static_cast<size_t>(k) * ldb;
      for (int j = 0; j < N; ++j) c[j] += aik * b[j];
    }
  }
}

template <typename T>
void gemm_nt(int M, int N, int K, const T* A, int lda, const T* B, int ldb,
             T* C, int ldc, bool accumulate) {
  for (int i = 0; i < M; ++i) {
    const T* a = A + static_cast<size_t>(i) * lda;
    T* c = C + static_cast<size_t>(i) * ldc;
    for (int j = 0; j < N; ++j) {
      T acc = accumulate ? c[j] : T(0);
      const T* b = B + static_cast<size_t>(j) * ldb;
      for (int k = 0; k < K; ++k) acc += a[k] * b[k];
      c[j] = acc;
    }
  }
}

template <typename T>
void gemm_tn(int M, int N, int K, const T* A, int lda, const T* B, int ldb,
             T* C, int ldc, bool accumulate) {
  if (!accumulate)
    for (int i = 0; i < M; ++i) {
      T* c = C + static_cast<size_t>(i) * ldc;
      for (int j = 0; j < N; ++j) c[j] = T(0);
    }
  for (int k = 0; k < K; ++k) {
    const T* a = A + static_cast<size_t>(k) * lda;
    const T* b = B + static_cast<size_t>(k) * ldb;
    for (int i = 0; i < M; ++i) {
      const T aki = a[i];
      T* c = C + static_cast<size_t>(i) * ldc;
      for (int j = 0; j < N; ++j) c[j] += aki * b[j];
    }
  }
}

}  // namespace ref

// ---- generic front-ends: float routes through the dispatch table ----

template <typename T>
T dot(const T* a, const T* b, int n) {
  if constexpr (std::is_same_v<T, float>) return dot_f32(a, b, n);
  else return ref::dot(a, b, n);
}

template <typename T>
void axpy(T alpha, const T* x, T* y, int n) {
  if constexpr (std::is_same_v<T, float>) axpy_f32(alpha, x, y, n);
  else ref::axpy(alpha, x, y, n);
}

template <typename T>
void scale(T* x, T alpha, int n) {
  if constexpr (std::is_same_v<T, float>) scale_f32(x, alpha, n);
  else ref::scale(x, alpha, n);
}

template <typename T>
void vadd(const T* a, const T* b, T* out, int n) {
  if constexpr (std::is_same_v<T, float>) vadd_f32(a, b, out, n);
  else ref::vadd(a, b, out, n);
}

template <typename T>
void vmul(const T* a, const T* b, T* out, int n) {
  if constexpr (std::is_same_v<T, float>) vmul_f32(a, b, out, n);
  else ref::vmul(a, b, out, n);
}

template <typename T>
T vsum(const T* x, int n) {
  if constexpr (std::is_same_v<T, float>) return vsum_f32(x, n);
  else return ref::vsum(x, n);
}

template <typename T>
void elu_fwd(const T* x, T* y, int n) {
  if constexpr (std::is_same_v<T, float>) elu_fwd_f32(x, y, n);
  else ref::elu_fwd(x, y, n);
}

template <typename T>
void elu_bwd(const T* y, const T* dy, T* dx, int n) {
  if constexpr (std::is_same_v<T, float>) elu_bwd_f32(y, dy, dx, n);
  else ref::elu_bwd(y, dy, dx, n);
}

template <typename T>
void gemm_nn(int M, int N, int K, const T* A, int lda, const T* B, int ldb,
             T* C, int ldc, bool accumulate) {
  if constexpr (std::is_same_v<T, float>)
    gemm_nn_f32(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
  else
    ref::gemm_nn(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
}

template <typename T>
void gemm_nt(int M, int N, int K, const T* A, int lda, const T* B, int ldb,
             T* C, int ldc, bool accumulate) {
  if constexpr (std::is_same_v<T, float>)
    gemm_nt_f32(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
  else
    ref::gemm_nt(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
}

template <typename T>
void gemm_tn(int M, int N, int K, const T* A, int lda, const T* B, int ldb,
             T* C, int ldc, bool accumulate) {
  if constexpr (std::is_same_v<T, float>)
    gemm_tn_f32(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
  else
    ref::gemm_tn(M, N, K, A, lda, B, ldb, C, ldc, accumulate);
}

}  // namespace smr::kern
