//---------------------------------------------------------------------------//
// Copyright 2026 the entangle-lab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file entlab/version.hpp
//! \brief Library version, embedded in every output's provenance header.
//---------------------------------------------------------------------------//
#pragma once

namespace entlab
{

inline constexpr char version_string[] = "0.1.0";

}  // namespace entlab
