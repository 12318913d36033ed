#pragma once

#include "bits.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "measures.hpp"
#include "parallel.hpp"
#include "purity.hpp"
#include "rng.hpp"
#include "spectra.hpp"
#include "state.hpp"
#include "theory.hpp"
