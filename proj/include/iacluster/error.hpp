// SPDX-License-Identifier: Apache-2.0
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

#ifndef IACLUSTER_ERROR_HPP
#define IACLUSTER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace iacluster
{

// Base of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (d <= 0, alpha > 4 for bounds, ...).
class DomainError : public Error
{
  public:
    using Error::Error;
};

// Mismatched matrix / vector shapes.
class DimensionError : public Error
{
  public:
    using Error::Error;
};

// Antenna / cluster setting violates N_R + N_T - 1 >= cbar.
class FeasibilityError : public Error
{
  public:
    FeasibilityError(int n_t, int n_r, int cbar);

    int n_t() const { return n_t_; }
    int n_r() const { return n_r_; }
    int cbar() const { return cbar_; }

  private:
    int n_t_, n_r_, cbar_;
};

// Iterative alignment exhausted its iteration and restart budget.
class ConvergenceError : public Error
{
  public:
    ConvergenceError(const std::string& what, double best_leakage)
        : Error(what), best_leakage_(best_leakage)
    {
    }

    double best_leakage() const { return best_leakage_; }

  private:
    double best_leakage_;
};

// Quadrature failed to reach its tolerance. Carries the best estimate obtained.
class NumericalError : public Error
{
  public:
    NumericalError(const std::string& what, double partial_value, double partial_error)
        : Error(what), partial_value_(partial_value), partial_error_(partial_error)
    {
    }

    double partial_value() const { return partial_value_; }
    double partial_error() const { return partial_error_; }

  private:
    double partial_value_;
    double partial_error_;
};

// Outer interference integral does not converge (alpha <= 2).
class DivergenceError : public NumericalError
{
  public:
    explicit DivergenceError(const std::string& what)
        : NumericalError(what, 0.0, 0.0)
    {
    }
};

// Monte-Carlo run aborted because too many trials failed.
class RunError : public Error
{
  public:
    using Error::Error;
};

// Invalid experiment configuration. field() is the dotted path of the offending key.
class ConfigError : public Error
{
  public:
    ConfigError(std::string field, const std::string& what)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field))
    {
    }

    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

// Two curves compared on different d_ii grids.
class GridMismatchError : public Error
{
  public:
    using Error::Error;
};

} // namespace iacluster

#endif
