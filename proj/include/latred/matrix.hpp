#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace latred {

using cplx = std::complex<double>;

/// Dense column-major matrix. Column j is basis vector h_j wherever a matrix
/// is used as a lattice basis.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[j * rows_ + i];
  }

  T* col(std::size_t j) { return data_.data() + j * rows_; }
  const T* col(std::size_t j) const { return data_.data() + j * rows_; }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Mat transposed_conj() const {
    Mat out(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) {
        if constexpr (std::is_same_v<T, cplx>)
          out(j, i) = std::conj((*this)(i, j));
        else
          out(j, i) = (*this)(i, j);
      }
    return out;
  }

  Mat operator*(const Mat& rhs) const {
    Mat out(rows_, rhs.cols_);
    for (std::size_t j = 0; j < rhs.cols_; ++j)
      for (std::size_t k = 0; k < cols_; ++k) {
        T f = rhs(k, j);
        if (f == T{}) continue;
        const T* a = col(k);
        T* o = out.col(j);
        for (std::size_t i = 0; i < rows_; ++i) o[i] += a[i] * f;
      }
    return out;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    std::vector<T> out(rows_, T{});
    for (std::size_t k = 0; k < cols_; ++k) {
      const T* a = col(k);
      for (std::size_t i = 0; i < rows_; ++i) out[i] += a[i] * v[k];
    }
    return out;
  }

  Mat operator-(const Mat& rhs) const {
    Mat out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
  }

  bool same_shape(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Mat<cplx>;
using RealMatrix = Mat<double>;

/// True when every entry is finite (rejects NaN and infinities).
bool all_finite(const ComplexMatrix& m);
bool all_finite(const RealMatrix& m);

double frobenius_norm(const ComplexMatrix& m);
double column_norm(const ComplexMatrix& m, std::size_t j);
double column_norm_sq(const ComplexMatrix& m, std::size_t j);
/// Largest Euclidean column norm (the quantity shared by a complex basis and
/// its real embedding).
double max_column_norm(const ComplexMatrix& m);
double max_column_norm(const RealMatrix& m);

ComplexMatrix to_complex(const RealMatrix& m);
/// Drops imaginary parts; callers must know they are zero.
RealMatrix to_real(const ComplexMatrix& m);
bool is_real_valued(const ComplexMatrix& m);

/// Determinant of a square complex matrix via LU with partial pivoting.
cplx determinant(const ComplexMatrix& m);

// --- matrix text format -----------------------------------------------------
//
// First line: "m n". Then m rows of n whitespace-separated complex literals of
// the form a+bi / a-bi (b may be 0; a bare real is accepted on input). Written
// with 17 significant digits so values round-trip bit exactly.

std::string format_complex(const cplx& z);
cplx parse_complex(const std::string& token);

void write_matrix_text(std::ostream& out, const ComplexMatrix& m);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);
ComplexMatrix read_matrix_text(std::istream& in, const std::string& origin);
ComplexMatrix read_matrix_file(const std::string& path);

}  // namespace latred
