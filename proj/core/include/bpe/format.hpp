#pragma once

// Line-oriented text formats.
//
// .sas  planning instance
//
//   sas 1
//   vars <n>
//   domain <d>
//   init <v_0> ... <v_{n-1}>          each value in 0..d-1
//   goal <g_0> ... <g_{n-1}>          value or "_" for undefined
//   action <name>                     zero or more blocks, in list order
//   pre <var>=<val> ...               optional, at most once per block
//   eff <var>=<val> ...               optional, at most once per block
//   end
//
// .hs   hitting set
//
//   hs <|S|> <|C|> <k>
//   <element> ...                     one line per member of C, nonempty
//
// .pc   partitioned graph (parts V_0..V_{k-1}, each of size n)
//
//   pc <k> <n>
//   <i> <a> <j> <b>                   edge {(i,a),(j,b)}, i != j
//
// Lines whose first non-blank character is '#' are comments. Blank lines are
// ignored except where a hitting-set member is expected. All parsers report
// failures as ParseError carrying the 1-based line number.

#include <string>
#include <string_view>

#include "bpe/core.hpp"
#include "bpe/problems.hpp"

namespace bpe {

SasInstance parse_sas(std::string_view text);
std::string serialize_sas(const SasInstance& inst);

HittingSetInstance parse_hitting_set(std::string_view text);
std::string serialize_hitting_set(const HittingSetInstance& hs);

PartitionedGraph parse_partitioned_graph(std::string_view text);
std::string serialize_partitioned_graph(const PartitionedGraph& g);

// Render a partial state as the space-separated token list used by .sas
// ("_" for undefined).
std::string format_state(const PartialState& s);

}  // namespace bpe
