#pragma once

// Umbrella header for the qinterp library: finite fields with trace
// characters, multivariate polynomial machinery, a dense qudit state-vector
// simulator with QFT over F_q, the hidden-linear-form and multivariate
// interpolation protocols, and the share-distribution layer with adversary
// structure predicates.

#include "qinterp/adversary.hpp"
#include "qinterp/bernstein_vazirani.hpp"
#include "qinterp/finite_field.hpp"
#include "qinterp/interpolation.hpp"
#include "qinterp/polynomial.hpp"
#include "qinterp/qudit_sim.hpp"
#include "qinterp/rng.hpp"
#include "qinterp/secret_sharing.hpp"
#include "qinterp/transcript.hpp"
