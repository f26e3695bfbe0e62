#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fisnose/fis.hpp"
#include "fisnose/pipeline.hpp"

namespace fisnose {

/// A trained model with the configuration that produced it and the names of
/// its inputs and outputs.
///
/// Text layout (version 1):
///
///   fisnose-model 1
///   dims <inputs> <rules> <outputs>
///   combinator sum|product
///   eta <real>
///   epochs <int>
///   seed <int>
///   order blocks|shuffled
///   channels <count>
///   <one name per line>
///   labels <count>
///   <one label per line>
///   centers
///   <inputs rows of rules reals>
///   widths
///   <inputs rows of rules reals>
///   outputs
///   <outputs rows of rules reals>
///
/// Reals are written in shortest round-trip form, so load(save(m)) is
/// bit-identical.
struct ModelFile {
  FisModel model;
  TrainConfig config;
  std::vector<std::string> channels;
  std::vector<std::string> labels;

  bool operator==(const ModelFile&) const = default;
};

std::string serialize_model(const ModelFile& file);
ModelFile parse_model(std::istream& in);
void save_model(const ModelFile& file, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace fisnose
