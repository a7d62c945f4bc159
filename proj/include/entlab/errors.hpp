//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/errors.hpp
//! \brief Failure types raised by the numerical routines.
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace entlab
{

//! Requested quadrature tolerance could not be reached within the panel
//! budget. Signals an ill-posed request, not an internal defect.
class ToleranceNotMet : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Monte Carlo sample budget too small for the requested reliability.
class BudgetTooSmall : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! A quantum expectation value that must be real came out complex;
//! indicates a broken operator construction.
class NonHermitianResult : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Not enough samples for the requested estimate.
class TooFewPoints : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Envelope extraction found no interior local maxima (monotone or
//! constant data). Callers usually fall back to a raw fit.
class NoPeaksFound : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Fit window is too narrow to identify a power-law exponent.
class DegenerateFit : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! An estimator was handed an empty (or near-empty) input sequence.
class EmptyInput : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! A computed value is NaN or infinite; the producing run must abort
//! rather than emit the value.
class NonFiniteValue : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace entlab
