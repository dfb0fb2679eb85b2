#pragma once

// Plain-text artifact formats. Every file ends with a "sha256 <hex>" line
// covering all bytes before it; loaders verify it.
//
//   dataset cache   columnar text, one "column" header + value line per
//                   feature, embedded normalization statistics
//   feature mask    "<feature name> <0|1>" per line
//   model           JSON: topology, flat parameters, mask, norm statistics

#include <string>
#include <string_view>
#include <vector>

#include "hhomlp/data.hpp"
#include "hhomlp/featsel.hpp"
#include "hhomlp/train.hpp"

namespace hhomlp::io {

// Appends the digest line.
std::string stamp(std::string body);
// Checks and strips the digest line; throws DataError on mismatch.
std::string_view verify_stamp(std::string_view text, std::string_view source);
// Digest recorded in a stamped text.
std::string stamped_digest(std::string_view text);

std::string dataset_to_text(const data::Dataset& dataset);
data::Dataset dataset_from_text(std::string_view text,
                                std::string_view source = "<memory>");

struct MaskFile {
  featsel::FeatureMask mask;
  std::vector<std::string> feature_names;
};

std::string mask_to_text(const MaskFile& mask);
MaskFile mask_from_text(std::string_view text,
                        std::string_view source = "<memory>");

std::string model_to_text(const train::TrainedModel& model);
train::TrainedModel model_from_text(std::string_view text,
                                    std::string_view source = "<memory>");

// Write helpers return the digest of what they wrote.
std::string save_dataset(const std::string& path, const data::Dataset& dataset);
data::Dataset load_dataset(const std::string& path);
std::string save_mask(const std::string& path, const MaskFile& mask);
MaskFile load_mask(const std::string& path);
std::string save_model(const std::string& path,
                       const train::TrainedModel& model);
train::TrainedModel load_model(const std::string& path);

}  // namespace hhomlp::io
