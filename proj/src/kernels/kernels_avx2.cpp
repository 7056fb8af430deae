#include <immintrin.h>

#include "smr/kernels/kernels.hpp"

#include "kernel_table.hpp"

// AVX2+FMA backend. Compiled with -mavx2 -mfma in its own translation unit;
// only reached through the dispatch table after a cpuid check.

namespace smr::kern::detail {
namespace {

inline float hsum(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  lo = _mm_add_ps(lo, hi);
  __m128 shuf = _mm_movehdup_ps(lo);
  __m128 sums = _mm_add_ps(lo, shuf);
  shuf = _mm_movehl_ps(shuf, sums);
  sums = _mm_add_ss(sums, shuf);
  return _mm_cvtss_f32(sums);
}

// Cephes-style single-precision exp, max relative error ~2 ulp on the
// clamped range. Used for the negative branch of ELU.
inline __m256 exp256(__m256 x) {
  const __m256 hi = _mm256_set1_ps(88.3762626647950f);
  const __m256 lo = _mm256_set1_ps(-88.3762626647949f);
  const __m256 log2e = _mm256_set1_ps(1.44269504088896341f);
  const __m256 c1 = _mm256_set1_ps(0.693359375f);
  const __m256 c2 = _mm256_set1_ps(-2.12194440e-4f);
  const __m256 p0 = _mm256_set1_ps(1.9875691500e-4f);
  const __m256 p1 = _mm256_set1_ps(1.3981999507e-3f);
  const __m256 p2 = _mm256_set1_ps(8.3334519073e-3f);
  const __m256 p3 = _mm256_set1_ps(4.1665795894e-2f);
  const __m256 p4 = _mm256_set1_ps(1.6666665459e-1f);
  const __m256 p5 = _mm256_set1_ps(5.0000001201e-1f);
  const __m256 one = _mm256_set1_ps(1.0f);

  x = _mm256_min_ps(x, hi);
  x = _mm256_max_ps(x, lo);

  __m256 fx = _mm256_fmadd_ps(x, log2e, _mm256_set1_ps(0.5f));
  fx = _mm256_floor_ps(fx);
  x = _mm256_fnmadd_ps(fx, c1, x);
  x = _mm256_fnmadd_ps(fx, c2, x);

  const __m256 z = _mm256_mul_ps(x, x);
  __m256 y = p0;
  y = _mm256_fmadd_ps(y, x, p1);
  y = _mm256_fmadd_ps(y, x, p2);
  y = _mm256_fmadd_ps(y, x, p3);
  y = _mm256_fmadd_ps(y, x, p4);
  y = _mm256_fmadd_ps(y, x, p5);
  y = _mm256_fmadd_ps(y, z, x);
  y = _mm256_add_ps(y, one);

  const __m256i n = _mm256_cvtps_epi32(fx);
  const __m256i pow2n =
      _mm256_slli_epi32(_mm256_add_epi32(n, _mm256_set1_epi32(127)), 23);
  return _mm256_mul_ps(y, _mm256_castsi256_ps(pow2n));
}

float a_dot(const float* a, const float* b, int n) {
  __m256 acc0 = _mm256_setzero_ps();
  __m256 acc1 = _mm256_setzero_ps();
  int i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
    acc1 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i + 8), _mm256_loadu_ps(b + i + 8),
                           acc1);
  }
  for (; i + 8 <= n; i += 8)
    acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i), acc0);
  float s = hsum(_mm256_add_ps(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void a_axpy(float alpha, const float* x, float* y, int n) {
  const __m256 va = _mm256_set1_ps(alpha);
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 vy = _mm256_loadu_ps(y + i);
    vy = _mm256_fmadd_ps(va, _mm256_loadu_ps(x + i), vy);
    _mm256_storeu_ps(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void a_scale(float* x, float alpha, int n) {
  const __m256 va = _mm256_set1_ps(alpha);
  int i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(x + i, _mm256_mul_ps(va, _mm256_loadu_ps(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void a_vadd(const float* a, const float* b, float* out, int n) {
  int i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(out + i,
                     _mm256_add_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void a_vmul(const float* a, const float* b, float* out, int n) {
  int i = 0;
  for (; i + 8 <= n; i += 8)
    _mm256_storeu_ps(out + i,
                     _mm256_mul_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

float a_vsum(const float* x, int n) {
  __m256 acc = _mm256_setzero_ps();
  int i = 0;
  for (; i + 8 <= n; i += 8) acc = _mm256_add_ps(acc, _mm256_loadu_ps(x + i));
  float s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

void a_elu_fwd(const float* x, float* y, int n) {
  const __m256 one = _mm256_set1_ps(1.0f);
  const __m256 zero = _mm256_setzero_ps();
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 vx = _mm256_loadu_ps(x + i);
    const __m256 neg = _mm256_sub_ps(exp256(vx), one);
    const __m256 mask = _mm256_cmp_ps(vx, zero, _CMP_GT_OQ);
    _mm256_storeu_ps(y + i, _mm256_blendv_ps(neg, vx, mask));
  }
  for (; i < n; ++i)
    y[i] = x[i] > 0.0f ? x[i] : static_cast<float>(std::expm1(double(x[i])));
}

void a_elu_bwd(const float* y, const float* dy, float* dx, int n) {
  const __m256 one = _mm256_set1_ps(1.0f);
  const __m256 zero = _mm256_setzero_ps();
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 vy = _mm256_loadu_ps(y + i);
    const __m256 d = _mm256_blendv_ps(_mm256_add_ps(vy, one), one,
                                      _mm256_cmp_ps(vy, zero, _CMP_GT_OQ));
    _mm256_storeu_ps(dx + i, _mm256_mul_ps(_mm256_loadu_ps(dy + i), d));
  }
  for (; i < n; ++i) dx[i] = dy[i] * (y[i] > 0.0f ? 1.0f : y[i] + 1.0f);
}

// 4x16 register-blocked panels over j, K innermost.
template <int R>
inline void nn_panel16(int j0, int K, const float* A, int lda, const float* B,
                       int ldb, float* C, int ldc, bool acc) {
  __m256 c[R][2];
  for (int r = 0; r < R; ++r) {
    if (acc) {
      c[r][0] = _mm256_loadu_ps(C + r * ldc + j0);
      c[r][1] = _mm256_loadu_ps(C + r * ldc + j0 + 8);
    } else {
      c[r][0] = _mm256_setzero_ps();
      c[r][1] = _mm256_setzero_ps();
    }
  }
  for (int k = 0; k < K; ++k) {
    const __m256 b0 = _mm256_loadu_ps(B + static_cast<size_t>(k) * ldb + j0);
    const __m256 b1 = _mm256_loadu_ps(B + static_cast<size_t>(k) * ldb + j0 + 8);
    for (int r = 0; r < R; ++r) {
      const __m256 a = _mm256_set1_ps(A[static_cast<size_t>(r) * lda + k]);
      c[r][0] = _mm256_fmadd_ps(a, b0, c[r][0]);
      c[r][1] = _mm256_fmadd_ps(a, b1, c[r][1]);
    }
  }
  for (int r = 0; r < R; ++r) {
    _mm256_storeu_ps(C + r * ldc + j0, c[r][0]);
    _mm256_storeu_ps(C + r * ldc + j0 + 8, c[r][1]);
  }
}

template <int R>
inline void nn_panel8(int j0, int K, const float* A, int lda, const float* B,
                      int ldb, float* C, int ldc, bool acc) {
  __m256 c[R];
  for (int r = 0; r < R; ++r)
    c[r] = acc ? _mm256_loadu_ps(C + r * ldc + j0) : _mm256_setzero_ps();
  for (int k = 0; k < K; ++k) {
    const __m256 b0 = _mm256_loadu_ps(B + static_cast<size_t>(k) * ldb + j0);
    for (int r = 0; r < R; ++r) {
      const __m256 a = _mm256_set1_ps(A[static_cast<size_t>(r) * lda + k]);
      c[r] = _mm256_fmadd_ps(a, b0, c[r]);
    }
  }
  for (int r = 0; r < R; ++r) _mm256_storeu_ps(C + r * ldc + j0, c[r]);
}

template <int R>
inline void nn_rows(int N, int K, const float* A, int lda, const float* B,
                    int ldb, float* C, int ldc, bool acc) {
  int j = 0;
  for (; j + 16 <= N; j += 16) nn_panel16<R>(j, K, A, lda, B, ldb, C, ldc, acc);
  for (; j + 8 <= N; j += 8) nn_panel8<R>(j, K, A, lda, B, ldb, C, ldc, acc);
  for (; j < N; ++j) {
    for (int r = 0; r < R; ++r) {
      float s = acc ? C[r * ldc + j] : 0.0f;
      for (int k = 0; k < K; ++k)
        s += A[static_cast<size_t>(r) * lda + k] * B[static_cast<size_t>(k) * ldb + j];
      C[r * ldc + j] = s;
    }
  }
}

void a_gemm_nn(int M, int N, int K, const float* A, int lda, const float* B,
               int ldb, float* C, int ldc, bool acc) {
  int i = 0;
  for (; i + 4 <= M; i += 4)
    nn_rows<4>(N, K, A + static_cast<size_t>(i) * lda, lda, B, ldb,
               C + static_cast<size_t>(i) * ldc, ldc, acc);
  for (; i + 2 <= M; i += 2)
    nn_rows<2>(N, K, A + static_cast<size_t>(i) * lda, lda, B, ldb,
               C + static_cast<size_t>(i) * ldc, ldc, acc);
  for (; i < M; ++i)
    nn_rows<1>(N, K, A + static_cast<size_t>(i) * lda, lda, B, ldb,
               C + static_cast<size_t>(i) * ldc, ldc, acc);
}

// nt: rows of A against rows of B, contiguous in k. Four dots share one
// pass over the A row.
void a_gemm_nt(int M, int N, int K, const float* A, int lda, const float* B,
               int ldb, float* C, int ldc, bool acc) {
  for (int i = 0; i < M; ++i) {
    const float* a = A + static_cast<size_t>(i) * lda;
    float* c = C + static_cast<size_t>(i) * ldc;
    int j = 0;
    for (; j + 4 <= N; j += 4) {
      __m256 s0 = _mm256_setzero_ps(), s1 = _mm256_setzero_ps(),
             s2 = _mm256_setzero_ps(), s3 = _mm256_setzero_ps();
      const float* b0 = B + static_cast<size_t>(j) * ldb;
      const float* b1 = B + static_cast<size_t>(j + 1) * ldb;
      const float* b2 = B + static_cast<size_t>(j + 2) * ldb;
      const float* b3 = B + static_cast<size_t>(j + 3) * ldb;
      int k = 0;
      for (; k + 8 <= K; k += 8) {
        const __m256 va = _mm256_loadu_ps(a + k);
        s0 = _mm256_fmadd_ps(va, _mm256_loadu_ps(b0 + k), s0);
        s1 = _mm256_fmadd_ps(va, _mm256_loadu_ps(b1 + k), s1);
        s2 = _mm256_fmadd_ps(va, _mm256_loadu_ps(b2 + k), s2);
        s3 = _mm256_fmadd_ps(va, _mm256_loadu_ps(b3 + k), s3);
      }
      float t0 = hsum(s0), t1 = hsum(s1), t2 = hsum(s2), t3 = hsum(s3);
      for (; k < K; ++k) {
        t0 += a[k] * b0[k];
        t1 += a[k] * b1[k];
        t2 += a[k] * b2[k];
        t3 += a[k] * b3[k];
      }
      c[j] = (acc ? c[j] : 0.0f) + t0;
      c[j + 1] = (acc ? c[j + 1] : 0.0f) + t1;
      c[j + 2] = (acc ? c[j + 2] : 0.0f) + t2;
      c[j + 3] = (acc ? c[j + 3] : 0.0f) + t3;
    }
    for (; j < N; ++j) {
      const float s = a_dot(a, B + static_cast<size_t>(j) * ldb, K);
      c[j] = (acc ? c[j] : 0.0f) + s;
    }
  }
}

// tn: accumulate rank-1 updates row by row, blocked over j so the touched
// C columns stay in cache.
void a_gemm_tn(int M, int N, int K, const float* A, int lda, const float* B,
               int ldb, float* C, int ldc, bool acc) {
  constexpr int kBlock = 512;
  if (!acc)
    for (int i = 0; i < M; ++i) {
      float* c = C + static_cast<size_t>(i) * ldc;
      for (int j = 0; j < N; ++j) c[j] = 0.0f;
    }
  for (int j0 = 0; j0 < N; j0 += kBlock) {
    const int jn = N - j0 < kBlock ? N - j0 : kBlock;
    for (int k = 0; k < K; ++k) {
      const float* arow = A + static_cast<size_t>(k) * lda;
      const float* b = B + static_cast<size_t>(k) * ldb + j0;
      for (int i = 0; i < M; ++i)
        a_axpy(arow[i], b, C + static_cast<size_t>(i) * ldc + j0, jn);
    }
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t = {a_dot,     a_axpy,    a_scale,   a_vadd,
                                a_vmul,    a_vsum,    a_elu_fwd, a_elu_bwd,
                                a_gemm_nn, a_gemm_nt, a_gemm_tn};
  return t;
}

}  // namespace smr::kern::detail
