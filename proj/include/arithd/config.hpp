#pragma once

// Runtime settings for the command-line tool: one flat struct that maps onto
// the per-module option types, validated up front, with a stable hash that
// commands embed in their output.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "arithd/int.hpp"
#include "arithd/scanner.hpp"
#include "arithd/triple.hpp"

namespace arithd {

struct Config {
  Rational lll_delta{99, 100};        // must lie strictly between 1/4 and 1
  unsigned rank_ceiling = 10;         // exact minimum searches refuse larger ranks
  Int norm_cap = 0;                   // 0 = derive the cap from the triple itself
  unsigned precision_bits = 128;      // interval comparator ladder start
  std::uint64_t budget = 50'000'000;  // enumeration node cap per search
  std::string output_format = "csv";  // csv | jsonl | json
  unsigned threads = 1;               // scanning only; 0 = hardware count

  void validate() const {
    if (lll_delta.den <= 0 || 4 * lll_delta.num <= lll_delta.den ||
        lll_delta.num >= lll_delta.den)
      throw std::domain_error("lll delta must lie strictly between 1/4 and 1");
    if (rank_ceiling < 1 || rank_ceiling > 64)
      throw std::domain_error("rank ceiling must lie in [1, 64]");
    if (sign(norm_cap) < 0) throw std::domain_error("norm cap must be nonnegative");
    if (precision_bits < 64 || precision_bits > 65536)
      throw std::domain_error("precision must lie in [64, 65536] bits");
    if (budget < 1000) throw std::domain_error("budget below the useful minimum of 1000");
    if (output_format != "csv" && output_format != "jsonl" && output_format != "json")
      throw std::domain_error("output format must be csv, jsonl, or json");
    if (threads > 4096) throw std::domain_error("thread count out of range");
  }

  ReduceOptions reduce() const {
    ReduceOptions r;
    r.delta_num = lll_delta.num;
    r.delta_den = lll_delta.den;
    r.enum_node_cap = budget;
    return r;
  }

  MinPsiOptions minpsi() const {
    MinPsiOptions o;
    o.reduce = reduce();
    o.rank_ceiling = rank_ceiling;
    o.node_cap = budget;
    return o;
  }

  ScanOptions scan() const {
    ScanOptions o;
    o.reduce = reduce();
    o.min_indep_node_cap = budget;
    o.threads = threads;
    return o;
  }

  std::string canonical() const {
    return "cfg-v1;delta=" + lll_delta.str() + ";rank=" + std::to_string(rank_ceiling) +
           ";cap=" + norm_cap.get_str() + ";prec=" + std::to_string(precision_bits) +
           ";budget=" + std::to_string(budget) + ";fmt=" + output_format +
           ";threads=" + std::to_string(threads);
  }

  std::string hash() const { return fnv1a_hex(fnv1a(canonical())); }
};

}  // namespace arithd
