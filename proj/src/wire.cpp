// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#include "vcot/wire.hpp"

namespace vcot::wire {

using nlohmann::json;

json to_json(const GenerateRequest& r) {
  return json{{"prompt", r.prompt},         {"temperature", r.temperature}, {"n", r.n},
              {"max_tokens", r.max_tokens}, {"logprobs", r.logprobs},       {"seed", r.seed}};
}

json to_json(const ImageRequest& r) { return json{{"prompt", r.prompt}, {"n", r.n}, {"seed", r.seed}}; }

json to_json(const CaptionRequest& r) { return json{{"png_base64", r.png_base64}}; }

json to_json(const EmbedRequest& r) {
  json inputs = json::array();
  for (const auto& in : r.inputs) {
    if (in.kind == EmbedInput::Kind::text)
      inputs.push_back({{"kind", "text"}, {"text", in.payload}});
    else
      inputs.push_back({{"kind", "image"}, {"png_base64", in.payload}});
  }
  return json{{"inputs", std::move(inputs)}};
}

std::string canonical(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::strict); }

}  // namespace vcot::wire
