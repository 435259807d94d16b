#pragma once

#include <string>
#include <vector>

#include "htc/fcn_weights.hpp"
#include "htc/matrix.hpp"

namespace htc {

/// Binary weight container, bit-exact across platforms:
///   bytes 0..3   magic "HTWT"
///   bytes 4..7   format version (u32 LE)
///   bytes 8..11  layer count L (u32 LE)
///   then per layer: rows (u32 LE), cols (u32 LE)
///   then per layer: rows*cols doubles, row-major, IEEE-754 LE
inline constexpr char kWeightMagic[4] = {'H', 'T', 'W', 'T'};
inline constexpr std::uint32_t kWeightFormatVersion = 1;

/// Serializes matrices; write is atomic (temp file + rename).
void write_weight_file(const std::string& path, const std::vector<Matrix>& layers);
void write_weight_file(const std::string& path, const FcnWeights& net);

/// Reads and validates the container. Adjacent layer shapes must chain
/// (cols of layer l+1 == rows of layer l); format violations throw
/// FormatError naming the offending byte offset.
std::vector<Matrix> read_weight_file(const std::string& path);

/// read_weight_file plus the network-depth requirement (L >= 2).
FcnWeights read_network(const std::string& path);

}  // namespace htc
