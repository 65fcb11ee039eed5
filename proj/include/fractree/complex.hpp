#pragma once

#include <complex>

namespace fractree {

using Complex = std::complex<double>;

}
