// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EGPC_ERROR_HPP
#define EGPC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace egpc
{

// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (negative length,
// non-positive mass, empty test set, ...).
class DomainError : public Error
{
public:
  using Error::Error;
};

// Dimension mismatch between vectors, matrices or point clouds.
class ShapeError : public Error
{
public:
  using Error::Error;
};

// Index or component count outside the admissible range.
class RangeError : public Error
{
public:
  using Error::Error;
};

// Requested components fall below the numerical rank cutoff.
class RankError : public Error
{
public:
  using Error::Error;
};

// Non-finite input or a failed factorization.
class NumericError : public Error
{
public:
  using Error::Error;
};

// CRV requested on a model without variance.
class UndefinedMeasureError : public Error
{
public:
  using Error::Error;
};

// Persistence errors. Each failure mode has its own type so callers can
// report them distinctly.
class IoError : public Error
{
public:
  using Error::Error;
};

class FormatError : public IoError
{
public:
  using IoError::IoError;
};

class VersionError : public FormatError
{
public:
  using FormatError::FormatError;
};

class ChecksumError : public FormatError
{
public:
  using FormatError::FormatError;
};

} // namespace egpc

#endif // EGPC_ERROR_HPP
