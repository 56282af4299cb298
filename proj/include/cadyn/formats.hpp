#pragma once

// Plain-text file formats. All are UTF-8, line oriented, '#' starts a
// comment. Serialization is canonical: parse(serialize(x)) == x and
// serialize(parse(text)) is byte-stable.
//
//   kind: ca1d | ca2d
//   alphabet: <k>
//   sided: one | two              (ca1d only)
//   neighborhood: 0 1             (ca1d) / (0,0) (1,0) (ca2d)
//   rule:
//   0 0 -> 0                      one line per pattern, each exactly once
//
//   kind: permfam
//   alphabet: <k>
//   perm <a>: p_0 ... p_{k-1}     rho_a(i) = p_i
//
//   kind: orientation
//   alphabet: <k>
//   pattern_size: <n>
//   dir <state>: <dx> <dy>
//   valid:
//   <n rows per block, blocks separated by blank lines>
//
//   kind: pathlayer
//   width: <w>
//   height: <h>
//   b2: <|B2|>
//   blayer: tuple | single
//   a_layer:
//   <h rows>
//   b_layer:
//   <h rows of w entries; tuples as a,b,x,y>
//
//   trace n=<n> t=<t> count=<p>
//   <one pattern per line, row-major>

#include <string>
#include <string_view>
#include <variant>

#include "cadyn/oriented.hpp"
#include "cadyn/reversible.hpp"
#include "cadyn/rule_table.hpp"
#include "cadyn/trace.hpp"

namespace cadyn {

using Model = std::variant<RuleTable, PermutationFamily, Orientation>;

/// Parses a rule, permutation-family or orientation file, dispatching on `kind:`.
Model parse_model(std::string_view text);
RuleTable parse_rule(std::string_view text);
PermutationFamily parse_permfam(std::string_view text);
Orientation parse_orientation(std::string_view text);
PathLayerConfig parse_path_layer(std::string_view text);
/// The alphabet is not part of the dump; it is taken from `alphabet_size`.
TraceSet parse_trace_set(std::string_view text, std::uint32_t alphabet_size);

/// Accepts either a ca1d rule file or a permutation family.
RuleTable parse_rule_or_family(std::string_view text);

std::string serialize(const RuleTable& rule);
std::string serialize(const PermutationFamily& family);
std::string serialize(const Orientation& orientation);
std::string serialize(const PathLayerConfig& cfg);
std::string serialize(const TraceSet& set);
std::string serialize(const Model& model);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace cadyn
