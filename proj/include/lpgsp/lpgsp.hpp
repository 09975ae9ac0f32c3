#pragma once

// Low-pass graph signal processing: graph and filter construction, GFT,
// low-pass ratios, graph-temporal filtering, synthetic signal generation,
// sampling and reconstruction, blind community detection, topology learning,
// time-vertex interpolation, and high-frequency anomaly detection.

#include "lpgsp/anomaly.hpp"
#include "lpgsp/clustering.hpp"
#include "lpgsp/errors.hpp"
#include "lpgsp/filters.hpp"
#include "lpgsp/graph.hpp"
#include "lpgsp/io.hpp"
#include "lpgsp/learning.hpp"
#include "lpgsp/processes.hpp"
#include "lpgsp/rng.hpp"
#include "lpgsp/sampling.hpp"
#include "lpgsp/spectral.hpp"
#include "lpgsp/temporal.hpp"
