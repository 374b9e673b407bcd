#include "rsma/surrogates.hpp"

namespace rsma {

template double surrogate_Theta<double>(double, double, double, double);
template double surrogate_Gamma<double>(double, double);
template double surrogate_Lambda<double>(double, double);
template double surrogate_Psi<double>(double, double, double, double, int);
template double surrogate_W0_linearization<double>(double, double);

}  // namespace rsma
