#ifndef QCHAN_TYPES_HPP
#define QCHAN_TYPES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace qchan {

using Index = Eigen::Index;

template <class Real>
using Complex = std::complex<Real>;

template <class Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <class Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using MatrixXcd = CMatrix<double>;
using VectorXd = RVector<double>;

// Error hierarchy. Everything the library throws derives from qchan::Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on a value (not a shape) is violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed or produced a result outside its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

namespace detail {

template <class... Args>
std::string concat(Args&&... args) {
  std::ostringstream os;
  (os << ... << std::forward<Args>(args));
  return os.str();
}

}  // namespace detail

/// Which tensor factor an operation acts on. The first factor is the
/// input space of a map; basis |i>|k> has flat index i * d2 + k.
enum class Factor { first, second };

/// Square matrix on C^{d1} (x) C^{d2}, optionally certified Hermitian.
///
/// The Hermitian flag is asserted by the caller and verified at
/// construction: max |A - A^*| must not exceed 1e-12 times a lower bound
/// on the operator norm. Nothing is symmetrized silently.
template <class Real>
class BipartiteOperator {
 public:
  enum class Hermiticity { unknown, asserted };

  BipartiteOperator() = default;

  BipartiteOperator(Index d1, Index d2, CMatrix<Real> mat,
                    Hermiticity h = Hermiticity::unknown)
      : d1_(d1), d2_(d2), mat_(std::move(mat)) {
    if (d1 < 1 || d2 < 1) {
      throw DimensionError(detail::concat("bipartite factors must be positive, got d1=", d1,
                                          " d2=", d2));
    }
    if (mat_.rows() != d1 * d2 || mat_.cols() != d1 * d2) {
      throw DimensionError(detail::concat("bipartite operator with d1=", d1, " d2=", d2,
                                          " needs a ", d1 * d2, "x", d1 * d2, " matrix, got ",
                                          mat_.rows(), "x", mat_.cols()));
    }
    if (!mat_.allFinite()) {
      throw NumericError("bipartite operator has non-finite entries");
    }
    if (h == Hermiticity::asserted) {
      const Real defect = hermiticity_defect(mat_);
      if (defect > Real(1e-12)) {
        throw DomainError(detail::concat("matrix asserted Hermitian but relative defect is ",
                                         defect));
      }
      hermitian_ = true;
    }
  }

  static BipartiteOperator hermitian(Index d1, Index d2, CMatrix<Real> mat) {
    return BipartiteOperator(d1, d2, std::move(mat), Hermiticity::asserted);
  }

  Index d1() const { return d1_; }
  Index d2() const { return d2_; }
  Index dim() const { return d1_ * d2_; }
  const CMatrix<Real>& mat() const { return mat_; }
  bool is_hermitian() const { return hermitian_; }

  /// max |A - A^*| divided by max(max |a_ij|, ||A||_F / sqrt(n)), both of
  /// which are lower bounds on the operator norm.
  static Real hermiticity_defect(const CMatrix<Real>& m) {
    if (m.size() == 0) return Real(0);
    const Real scale = std::max(m.cwiseAbs().maxCoeff(),
                                m.norm() / std::sqrt(static_cast<Real>(m.rows())));
    if (scale == Real(0)) return Real(0);
    return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
  }

 private:
  Index d1_ = 0;
  Index d2_ = 0;
  CMatrix<Real> mat_;
  bool hermitian_ = false;
};

/// Eigenvalues sorted ascending, with eigenvectors as columns when requested.
template <class Real>
struct Spectrum {
  RVector<Real> eigenvalues;
  CMatrix<Real> eigenvectors;  // empty when not computed

  bool has_vectors() const { return eigenvectors.size() != 0; }
};

}  // namespace qchan

#endif  // QCHAN_TYPES_HPP
