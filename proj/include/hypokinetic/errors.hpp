#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypokinetic {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error
{
 public:
  using Error::Error;
};

class NonIntegrable : public Error
{
 public:
  using Error::Error;
};

class InvalidExponent : public Error
{
 public:
  using Error::Error;
};

class HypothesisFailed : public Error
{
 public:
  using Error::Error;
};

class SingularSystem : public Error
{
 public:
  using Error::Error;
};

class UnsupportedGrid : public Error
{
 public:
  using Error::Error;
};

class CFLViolation : public Error
{
 public:
  using Error::Error;
};

class NonFinite : public Error
{
 public:
  NonFinite(const std::string& what, std::size_t step)
      : Error(what)
      , step_(step)
  {
  }
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class NoGap : public Error
{
 public:
  using Error::Error;
};

class Infeasible : public Error
{
 public:
  using Error::Error;
};

class DegenerateWindow : public Error
{
 public:
  using Error::Error;
};

class ParseError : public Error
{
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what)
      , line_(line)
  {
  }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error
{
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what)
      , field_(std::move(field))
  {
  }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace hypokinetic
