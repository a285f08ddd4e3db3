#include "gsqg/model.hpp"

#include <stdexcept>

namespace gsqg {

void ModelSpec::validate() const {
    biot_savart.validate();
    if (dissipation) {
        if (!(dissipation->kappa > 0.0))
            throw std::invalid_argument("dissipation kappa must be positive");
        dissipation->symbol.validate();
    }
}

ModelSpec ModelSpec::ohkitani(double shift) {
    ModelSpec m;
    m.biot_savart = MultiplierSpec::log_law(shift);
    m.biot_savart.sign = -1.0;
    return m;
}

ModelSpec ModelSpec::delta_sqg(double delta, double shift) {
    ModelSpec m;
    m.biot_savart = MultiplierSpec::power_shift(delta, shift);
    m.biot_savart.sign = 1.0;
    return m;
}

ModelSpec ModelSpec::dissipative_delta_sqg(double delta, double kappa, MultiplierSpec psi, double shift) {
    ModelSpec m = delta_sqg(delta, shift);
    m.dissipation = Dissipation{kappa, std::move(psi)};
    return m;
}

ModelSpec ModelSpec::logdiss_ohkitani(double kappa, double beta, double shift) {
    ModelSpec m = ohkitani(shift);
    m.dissipation = Dissipation{kappa, MultiplierSpec::log_pow(beta, shift)};
    return m;
}

ModelSpec ModelSpec::rescaled_delta_sqg(double delta, double shift) {
    ModelSpec m;
    m.biot_savart = MultiplierSpec::rescaled(delta, shift);
    m.biot_savart.sign = 1.0;
    m.rescaled_time = true;
    return m;
}

}  // namespace gsqg
