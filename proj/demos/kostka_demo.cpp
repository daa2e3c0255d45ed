// Copyright 2026 The spinchar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Kostka numbers K_{lambda,mu} for all lambda from one MPS.
//
//   kostka_demo 10 4,3,3

#include <iostream>

#include "spinchar/spinchar.hpp"

int main(int argc, char** argv) {
    using namespace spinchar;
    const int n = argc > 1 ? std::stoi(argv[1]) : 6;
    const Partition mu = argc > 2 ? Partition::parse(argv[2]) : Partition({3, 2, 1});
    if (mu.size() != n) {
        std::cerr << "weight must be a partition of n\n";
        return 2;
    }
    const KostkaRow row = kostka_row(mu, n);
    for (const auto& warning : row.warnings) {
        std::cerr << "warning: " << warning << '\n';
    }
    for (const auto& [lambda, result] : row.entries) {
        if (result.value != 0) {
            std::cout << lambda.to_string() << '\t' << result.value << '\n';
        }
    }
    std::cout << "max bond " << row.max_bond_seen << " vs bound " << kostka_bond_bound(mu) << '\n';
    return row.certified() ? 0 : 4;
}
