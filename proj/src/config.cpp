#include "zlrr/config.hpp"

#include "zlrr/error.hpp"

namespace zlrr {

ZlrrSpec RunConfig::spec() const {
    ZlrrSpec s;
    s.coefficients = coefficients;
    s.initial_terms.reserve(initial_terms.size());
    for (const std::string& t : initial_terms) {
        Int value;
        if (value.set_str(t, 10) != 0)
            fail(ErrorCode::BadInitialTerms, "initial term is not a decimal integer: " + t);
        s.initial_terms.push_back(value);
    }
    return validate_spec(s);
}

std::string serialize_config(const RunConfig& config) {
    std::string coeffs, init;
    for (std::size_t i = 0; i < config.coefficients.size(); ++i) {
        if (i) coeffs += ',';
        coeffs += std::to_string(config.coefficients[i]);
    }
    for (std::size_t i = 0; i < config.initial_terms.size(); ++i) {
        if (i) init += ',';
        init += config.initial_terms[i];
    }
    std::string out;
    out += "coeffs=" + coeffs + "\n";
    out += "init=" + init + "\n";
    out += "seed=" + std::to_string(config.seed) + "\n";
    out += "samples=" + std::to_string(config.samples) + "\n";
    out += "workers=" + std::to_string(config.workers) + "\n";
    if (!config.out_path.empty()) out += "out=" + config.out_path + "\n";
    return out;
}

}  // namespace zlrr
