#pragma once

#include <stdexcept>
#include <string>

namespace mrb {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TooLarge : public Error {
 public:
  TooLarge(const std::string& what, int n, int limit)
      : Error(what + ": n=" + std::to_string(n) + " exceeds limit " + std::to_string(limit)),
        n_(n), limit_(limit) {}
  int n() const { return n_; }
  int limit() const { return limit_; }

 private:
  int n_;
  int limit_;
};

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

class NotPerfectSquare : public Error {
 public:
  explicit NotPerfectSquare(int n)
      : Error("n=" + std::to_string(n) + " is not a perfect square >= 4") {}
};

class Infeasible : public Error {
 public:
  explicit Infeasible(int k)
      : Error("no ordering keeps the running buffer within k=" + std::to_string(k)), k_(k) {}
  int k() const { return k_; }

 private:
  int k_;
};

class Timeout : public Error {
 public:
  Timeout() : Error("time limit exceeded") {}
};

class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace mrb
