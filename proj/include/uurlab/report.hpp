// Copyright 2026 The uurlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <optional>
#include <string>

namespace uurlab {

enum class RelationSense {
    GreaterEqual,  // relation asserts lhs >= rhs
    LessEqual,     // relation asserts lhs <= rhs
};

/// Outcome of evaluating one inequality on concrete data.
///
/// slack is the feasibility margin, oriented so that nonnegative always means
/// the relation holds: lhs - rhs for GreaterEqual and rhs - lhs for LessEqual.
struct RelationReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    RelationSense sense = RelationSense::GreaterEqual;
    double slack = 0.0;
    double tol = 1e-9;
    bool saturated = false;
    bool indeterminate = false;

    /// Standard errors when the inputs came from fitted fringe data.
    std::optional<double> lhs_se;
    std::optional<double> rhs_se;
    /// Smallest eigenvalue for relations that are really matrix constraints.
    std::optional<double> min_eig;

    bool holds() const { return indeterminate || slack >= -tol; }
    bool infeasible() const { return !indeterminate && slack < -tol; }
};

inline RelationReport make_relation(std::string name, double lhs, double rhs,
                                    RelationSense sense, double tol = 1e-9) {
    RelationReport rep;
    rep.name = std::move(name);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.sense = sense;
    rep.slack = sense == RelationSense::GreaterEqual ? lhs - rhs : rhs - lhs;
    rep.tol = tol;
    rep.saturated = std::abs(rep.slack) <= tol;
    return rep;
}

}  // namespace uurlab
