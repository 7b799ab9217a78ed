// State files: { "dims": [d1,...,dN], "amplitudes": [[re,im],...] } with
// amplitudes in row-major multi-index order (party 1 slowest). Loading
// normalizes through make_pure.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfluct/report.hpp"
#include "qfluct/tensor_state.hpp"

namespace qfluct {

// Unreadable or malformed input; the CLI maps this to its input-error exit code.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline PureState read_state_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw io_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("amplitudes"))
    throw io_error("state file must be an object with 'dims' and 'amplitudes'");
  const auto& jd = doc["dims"];
  const auto& ja = doc["amplitudes"];
  if (!jd.is_array() || jd.empty() || !ja.is_array())
    throw io_error("'dims' and 'amplitudes' must be non-empty arrays");

  std::vector<int> dims;
  for (const auto& d : jd) {
    if (!d.is_number_integer()) throw io_error("'dims' entries must be integers");
    dims.push_back(d.get<int>());
  }
  Vec amps(static_cast<long>(ja.size()));
  long i = 0;
  for (const auto& pair : ja) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw io_error("each amplitude must be a [re, im] pair");
    amps(i++) = cxd(pair[0].get<double>(), pair[1].get<double>());
  }

  try {
    QuditSystem sys(dims);
    if (amps.size() != sys.total_dim())
      throw io_error("amplitude count " + std::to_string(amps.size()) +
                     " does not match total dimension " + std::to_string(sys.total_dim()));
    return make_pure(sys, amps);
  } catch (const std::invalid_argument& e) {  // covers dimension_error and zero vectors
    throw io_error(e.what());
  }
}

inline PureState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open state file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_state_json(buf.str());
}

inline std::string write_state_json(const PureState& state, const std::string& label = "") {
  std::vector<std::pair<std::string, std::string>> fields;
  if (!label.empty()) fields.emplace_back("label", quoted(label));
  std::vector<std::string> dims;
  for (int d : state.system().dims()) dims.push_back(int_str(d));
  fields.emplace_back("dims", json_array(dims));
  std::vector<std::string> amps;
  amps.reserve(state.amplitudes().size());
  for (long i = 0; i < state.amplitudes().size(); ++i) {
    const cxd a = state.amplitudes()(i);
    amps.push_back("[" + num_str(a.real()) + "," + num_str(a.imag()) + "]");
  }
  fields.emplace_back("amplitudes", json_array(amps));
  return json_object(fields);
}

}  // namespace qfluct
