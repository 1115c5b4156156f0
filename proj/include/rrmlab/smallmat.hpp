#pragma once
// Per-point dense operations on small symmetric matrices (d <= 3), packed
// upper triangle row-major, plus full d x d helpers.

#include <cmath>

namespace rrm::sm {

inline int pack_count(int d) { return d * (d + 1) / 2; }

// A <= B required.
inline int pack_index(int d, int A, int B) { return A * d - A * (A - 1) / 2 + (B - A); }

inline void sym_unpack(const double* p, int d, double* full) {
  for (int A = 0; A < d; ++A)
    for (int B = 0; B < d; ++B)
      full[A * d + B] = A <= B ? p[pack_index(d, A, B)] : p[pack_index(d, B, A)];
}

inline void sym_pack(const double* full, int d, double* p) {
  for (int A = 0; A < d; ++A)
    for (int B = A; B < d; ++B) p[pack_index(d, A, B)] = full[A * d + B];
}

inline double sym_det(const double* p, int d) {
  switch (d) {
    case 1: return p[0];
    case 2: return p[0] * p[2] - p[1] * p[1];
    case 3:
      return p[0] * (p[3] * p[5] - p[4] * p[4]) - p[1] * (p[1] * p[5] - p[4] * p[2]) +
             p[2] * (p[1] * p[4] - p[3] * p[2]);
    default: return 0;
  }
}

// Packed inverse via adjugate; false when the determinant vanishes.
inline bool sym_inv(const double* p, int d, double* out) {
  const double det = sym_det(p, d);
  if (det == 0 || !std::isfinite(det)) return false;
  const double inv = 1.0 / det;
  switch (d) {
    case 1:
      out[0] = inv;
      return true;
    case 2:
      out[0] = p[2] * inv;
      out[1] = -p[1] * inv;
      out[2] = p[0] * inv;
      return true;
    case 3:
      out[0] = (p[3] * p[5] - p[4] * p[4]) * inv;
      out[1] = (p[2] * p[4] - p[1] * p[5]) * inv;
      out[2] = (p[1] * p[4] - p[2] * p[3]) * inv;
      out[3] = (p[0] * p[5] - p[2] * p[2]) * inv;
      out[4] = (p[1] * p[2] - p[0] * p[4]) * inv;
      out[5] = (p[0] * p[3] - p[1] * p[1]) * inv;
      return true;
    default:
      return false;
  }
}

// Sylvester criterion on leading principal minors.
inline bool sym_posdef(const double* p, int d) {
  if (d >= 1 && !(p[0] > 0)) return false;
  if (d >= 2 && !(p[0] * p[pack_index(d, 1, 1)] - p[1] * p[1] > 0)) return false;
  if (d >= 3 && !(sym_det(p, 3) > 0)) return false;
  return true;
}

inline void mat_mul(const double* A, const double* B, int d, double* C) {
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double acc = 0;
      for (int k = 0; k < d; ++k) acc += A[i * d + k] * B[k * d + j];
      C[i * d + j] = acc;
    }
}

inline double mat_trace(const double* A, int d) {
  double t = 0;
  for (int i = 0; i < d; ++i) t += A[i * d + i];
  return t;
}

}  // namespace rrm::sm
