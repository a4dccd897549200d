// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

namespace gas::special {

// Natural log of the modified Bessel function of the first kind I_k(z)
// for integer order k and z >= 0. Negative orders use I_{-k} = I_k.
double log_bessel_i(int order, double z);

// I_{k+1}(z) / I_k(z), computed in log space.
double bessel_i_ratio(int order, double z);

double digamma(double x);
double trigamma(double x);

}  // namespace gas::special
