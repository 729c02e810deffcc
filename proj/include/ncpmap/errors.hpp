#pragma once

#include <stdexcept>
#include <string>

namespace ncpmap {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
  public:
    explicit NotHermitian(double deviation)
        : Error("matrix is not Hermitian (max |M - M^dag| = " + std::to_string(deviation) + ")"),
          deviation_(deviation) {}
    double deviation() const noexcept { return deviation_; }

  private:
    double deviation_;
};

// Raised by inverse4 when the determinant vanishes; |det| is kept so callers
// can tell a genuine map singularity from a merely ill-conditioned one.
class SingularMatrix : public Error {
  public:
    explicit SingularMatrix(double abs_det)
        : Error("matrix is singular (|det| = " + std::to_string(abs_det) + ")"), abs_det_(abs_det) {}
    double abs_det() const noexcept { return abs_det_; }

  private:
    double abs_det_;
};

// A singular map was applied to a state outside its invariant set.
class DivergentMap : public Error {
  public:
    using Error::Error;
};

class RateSingularity : public Error {
  public:
    using Error::Error;
};

class OutOfRange : public Error {
  public:
    using Error::Error;
};

class OutOfCube : public Error {
  public:
    using Error::Error;
};

class NotUnitary : public Error {
  public:
    using Error::Error;
};

// A request the theory says has no meaningful answer, e.g. a volume measure
// over the unbounded set of NCP maps.
class RejectedByTheory : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace ncpmap
