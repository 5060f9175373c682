#pragma once

// Frequency transforms of the resonance denominator 1/(u - s), s = +-1, that
// appear when the frequency integral of the zero-point part is done first.
// Integrals over u in [0, inf) are principal values when s = +1.

namespace cpforce::special {

// Auxiliary sine/cosine-integral functions:
// f(x) = Ci(x) sin x - si(x) cos x, g(x) = -Ci(x) cos x - si(x) sin x,
// with si = Si - pi/2. Both are positive and decay as 1/x and 1/x^2.
double aux_f(double x);
double aux_g(double x);

// J_cos(q) = int cos(q u)/(u - s) du
double j_cos(int s, double q);
// J_sin(q) = int sin(q u)/(u - s) du
double j_sin(int s, double q);
// J_exp(p) = int exp(-p u)/(u - s) du
double j_exp(int s, double p);

// K(p) = int u exp(-p u)/(u - s) du = 1/p + s J_exp(p), and p K'(p).
// Large p uses the asymptotic series, which avoids the 1/p cancellation.
double k_exp(int s, double p);
double p_dk_exp(int s, double p);

// Non-oscillatory parts used by the zero-point transform of the cosine kernel:
// s*J_cos(q) = smooth_cos(s,q) - [s>0] pi sin q
// q d/dq (s*J_cos(q)) = smooth_dcos(s,q) - [s>0] pi q cos q
double smooth_cos(int s, double q);
double smooth_dcos(int s, double q);

}  // namespace cpforce::special
