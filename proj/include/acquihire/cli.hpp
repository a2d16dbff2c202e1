// Copyright 2026 The Acquihire Authors
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

// Subcommand drivers behind the `acquihire` binary. Each driver turns a
// RunConfig into a document; RunCli adds argument parsing, output routing
// and exit codes.

#ifndef ACQUIHIRE_CLI_HPP_
#define ACQUIHIRE_CLI_HPP_

#include <algorithm>
#include <exception>
#include <functional>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

#include "acquihire/config.hpp"
#include "acquihire/emit.hpp"

namespace acquihire {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCertification = 3;

// Relative output paths are resolved against this directory when set.
inline constexpr const char* kOutputDirEnv = "ACQUIHIRE_OUTPUT_DIR";

// Applies fn to 0..n-1 on up to `threads` workers; results keep input
// order. The exception of the lowest failing index is rethrown.
template <typename T>
std::vector<T> ParallelMap(std::size_t n, int threads,
                           const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers =
      std::min<std::size_t>(n, threads < 1 ? 1 : static_cast<std::size_t>(threads));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Assumption checks for the configured primitives.
Json ValidateDocument(const RunConfig& cfg, bool* ok);

// Variant-specific solution at the configured lambda.
Json SolveDocument(const RunConfig& cfg);

// The equilibrium report of the variants that have one (baseline, cs, tech,
// partial); ConfigError otherwise.
EquilibriumReport SolveReport(const RunConfig& cfg);

// One row per sweep point; the header depends on the variant. Without a
// sweep the configured lambda is the only point.
RecordSet SweepRecords(const RunConfig& cfg);

// case,hire,layoff,exit,bench_hire,bench_layoff,bench_exit,prop3, one row
// per lambda point.
RecordSet LaborRecords(const RunConfig& cfg);
Json LaborDocument(const RunConfig& cfg);

Json PartialDocument(const RunConfig& cfg);
RecordSet PartialRecords(const RunConfig& cfg);

// Certification of the closed forms against the game oracle at every sweep
// point; *agree is false on any disagreement.
Json OracleDocument(const RunConfig& cfg, bool* agree);

// Duopoly curve data at a - c = 7, b = 5, H = 2, L = 1, pi_E = 0.9 on
// lambda = k/100, k = 1..99.
RecordSet Figure1Records(const Rational& cs_E);
inline const std::vector<std::string>& Figure1Shares() {
  static const std::vector<std::string> kShares = {"0.4", "0.5"};
  return kShares;
}
std::string Figure1FileName(const std::string& cs_E);  // figure1_csE_0.4.csv

// args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace acquihire

#endif  // ACQUIHIRE_CLI_HPP_
