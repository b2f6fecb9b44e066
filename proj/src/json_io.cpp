#include "tue/json_io.hpp"

#include "tue/error.hpp"

namespace tue {

nlohmann::json params_to_json(const ParameterSet& params) {
  return {{"n", params.n()}, {"alpha", params.alpha()}, {"t", params.t()}, {"u", params.u()}};
}

ParameterSet params_from_json(const nlohmann::json& j) {
  try {
    return make_params(j.at("n").get<int>(), j.at("alpha").get<double>(),
                       j.at("t").get<std::vector<double>>(), j.at("u").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("parameter JSON: ") + e.what());
  }
}

}  // namespace tue
