// Copyright 2026 The cddsim Authors
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

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cddsim/dfs.hpp"
#include "cddsim/errors.hpp"

namespace cddsim {

// Exchange-sequence file: one operation per line, `pair_i pair_j angle`,
// 1-based qubit indices (1-4 block A, 5-8 block B), angle in radians,
// '#' comments.  Returned operations use 0-based indices.
template <typename Real>
std::vector<ExchangeOp<Real>> parse_exchange_sequence(const std::string& text,
                                                      int system_count) {
  std::vector<ExchangeOp<Real>> ops;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long a = 0, b = 0;
    std::string angle_text;
    if (!(ls >> a)) continue;  // blank or comment-only line
    if (!(ls >> b >> angle_text))
      throw SequenceFileInvalidError("sequence line " + std::to_string(lineno) +
                                     ": expected 'pair_i pair_j angle'");
    std::string trailing;
    if (ls >> trailing)
      throw SequenceFileInvalidError("sequence line " + std::to_string(lineno) +
                                     ": unexpected trailing token '" + trailing + "'");
    if (a < 1 || a > system_count || b < 1 || b > system_count || a == b)
      throw SequenceFileInvalidError("sequence line " + std::to_string(lineno) +
                                     ": qubit indices must be distinct and in 1.." +
                                     std::to_string(system_count));
    size_t used = 0;
    long double angle = 0;
    try {
      angle = std::stold(angle_text, &used);
    } catch (const std::exception&) {
      throw SequenceFileInvalidError("sequence line " + std::to_string(lineno) +
                                     ": bad angle '" + angle_text + "'");
    }
    if (used != angle_text.size())
      throw SequenceFileInvalidError("sequence line " + std::to_string(lineno) +
                                     ": bad angle '" + angle_text + "'");
    ops.push_back(ExchangeOp<Real>{int(a - 1), int(b - 1), Real(angle)});
  }
  if (ops.empty())
    throw SequenceFileInvalidError("sequence file contains no operations");
  return ops;
}

template <typename Real>
std::vector<ExchangeOp<Real>> load_exchange_sequence(const std::string& path,
                                                     int system_count) {
  std::ifstream in(path);
  if (!in)
    throw SequenceFileInvalidError("cannot open sequence file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_exchange_sequence<Real>(text.str(), system_count);
}

template <typename Real>
std::string format_exchange_sequence(const std::vector<ExchangeOp<Real>>& ops) {
  std::ostringstream out;
  out << "# exchange sequence: pair_i pair_j angle (1-based indices, radians)\n";
  out.precision(18);
  for (const auto& op : ops)
    out << (op.a + 1) << " " << (op.b + 1) << " " << double(op.angle) << "\n";
  return out.str();
}

}  // namespace cddsim
