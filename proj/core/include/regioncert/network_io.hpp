#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "regioncert/network.hpp"

namespace regioncert {

// Network file format (JSON):
//
//   {
//     "format": "regioncert-network",   // optional on input
//     "version": 1,                     // optional on input
//     "input_dim": 2,
//     "classes": 2,
//     "layers": [
//       { "rows": 3, "cols": 2,
//         "weights": [ ... rows*cols reals, row-major ... ],
//         "bias": [ ... rows reals ... ],
//         "activation": { "name": "leaky_relu", "alpha": 0.1 } },
//       ...
//       { "rows": 2, "cols": 3, "weights": [...], "bias": [...],
//         "activation": null }          // output layer
//     ]
//   }
//
// Activation names: sigmoid, tanh, relu, leaky_relu, softplus, elu.
// "alpha" is required for leaky_relu and elu and rejected otherwise.
// Reals are written in shortest round-trip form, so parse(serialize(n)) == n.

Network parse_network(std::string_view text);
std::string serialize_network(const Network& net);

Network load_network(const std::filesystem::path& path);
void save_network(const Network& net, const std::filesystem::path& path);

}  // namespace regioncert
