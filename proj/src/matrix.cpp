#include "latred/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "latred/errors.hpp"

namespace latred {

bool all_finite(const ComplexMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const cplx& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

bool all_finite(const RealMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j))) return false;
  return true;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) s += column_norm_sq(m, j);
  return std::sqrt(s);
}

double column_norm_sq(const ComplexMatrix& m, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, j));
  return s;
}

double column_norm(const ComplexMatrix& m, std::size_t j) {
  return std::sqrt(column_norm_sq(m, j));
}

double max_column_norm(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j)
    best = std::max(best, column_norm_sq(m, j));
  return std::sqrt(best);
}

double max_column_norm(const RealMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j) * m(i, j);
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = cplx(m(i, j), 0.0);
  return out;
}

RealMatrix to_real(const ComplexMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, j).real();
  return out;
}

bool is_real_valued(const ComplexMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, j).imag() != 0.0) return false;
  return true;
}

cplx determinant(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant: matrix not square");
  std::size_t n = m.rows();
  ComplexMatrix a = m;
  cplx det{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(a(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0.0) return cplx{0.0, 0.0};
    if (pivot != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx f = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::string format_complex(const cplx& z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

cplx parse_complex(const std::string& token) {
  if (token.empty()) throw Error("empty complex literal");
  // Split at the sign that starts the imaginary part: the last '+'/'-' that is
  // not an exponent sign and not the leading sign.
  if (token.back() == 'i' || token.back() == 'I') {
    std::size_t split = std::string::npos;
    for (std::size_t p = token.size() - 1; p > 0; --p) {
      char c = token[p];
      if ((c == '+' || c == '-') && token[p - 1] != 'e' && token[p - 1] != 'E') {
        split = p;
        break;
      }
    }
    if (split == std::string::npos)
      throw Error("complex literal missing real part: " + token);
    std::string re_s = token.substr(0, split);
    std::string im_s = token.substr(split, token.size() - split - 1);
    if (im_s == "+" || im_s == "-") im_s += "1";
    std::size_t used = 0;
    double re = 0.0, im = 0.0;
    try {
      re = std::stod(re_s, &used);
      if (used != re_s.size()) throw Error("");
      im = std::stod(im_s, &used);
      if (used != im_s.size()) throw Error("");
    } catch (const std::exception&) {
      throw Error("bad complex literal: " + token);
    }
    return {re, im};
  }
  // bare real
  std::size_t used = 0;
  double re = 0.0;
  try {
    re = std::stod(token, &used);
    if (used != token.size()) throw Error("");
  } catch (const std::exception&) {
    throw Error("bad numeric literal: " + token);
  }
  return {re, 0.0};
}

void write_matrix_text(std::ostream& out, const ComplexMatrix& m) {
  out << m.rows() << " " << m.cols() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << " ";
      out << format_complex(m(i, j));
    }
    out << "\n";
  }
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  write_matrix_text(out, m);
}

ComplexMatrix read_matrix_text(std::istream& in, const std::string& origin) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(origin, 1, 1, "empty input, expected 'm n'");
  std::istringstream head(line);
  long long rows = -1, cols = -1;
  if (!(head >> rows >> cols) || rows <= 0 || cols <= 0)
    throw ParseError(origin, lineno, 1, "expected header 'm n' with m, n >= 1");
  ComplexMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!next_line())
      throw ParseError(origin, lineno + 1, 1,
                       "unexpected end of input at row " + std::to_string(i + 1));
    std::istringstream row(line);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::string tok;
      if (!(row >> tok))
        throw ParseError(origin, lineno, 1,
                         "row " + std::to_string(i + 1) + " has fewer than " +
                             std::to_string(m.cols()) + " entries");
      try {
        m(i, j) = parse_complex(tok);
      } catch (const Error& e) {
        throw ParseError(origin, lineno, 1, e.what());
      }
    }
    std::string extra;
    if (row >> extra)
      throw ParseError(origin, lineno, 1,
                       "row " + std::to_string(i + 1) + " has trailing data: " + extra);
  }
  if (!all_finite(m)) throw ParseError(origin, lineno, 1, "non-finite entry");
  return m;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return read_matrix_text(in, path);
}

}  // namespace latred
