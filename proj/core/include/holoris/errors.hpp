// SPDX-License-Identifier: Apache-2.0
//
// holoris - holographic self-controlled RIS simulation library
// Copyright (C) 2026 The holoris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace holoris
{
    // Base class of every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Invalid argument or configuration value.
    class InvalidArgument : public Error
    {
    public:
        using Error::Error;
    };

    // A spatial frequency pair that maps to no propagating direction.
    class InfeasibleFrequency : public Error
    {
    public:
        using Error::Error;
    };

    // No significant off-DC peak in the hologram spectrum.
    class NoPeak : public Error
    {
    public:
        using Error::Error;
    };

    // Both twin candidates violate the wavenumber bound.
    class AllCandidatesInfeasible : public Error
    {
    public:
        using Error::Error;
    };

    class SectorAmbiguous : public Error
    {
    public:
        using Error::Error;
    };

    class SectorEmpty : public Error
    {
    public:
        using Error::Error;
    };

    // Malformed file content. line() is 1-based, 0 when not line-specific.
    class FormatError : public Error
    {
    public:
        FormatError(const std::string &msg, std::size_t line = 0)
            : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };
}
