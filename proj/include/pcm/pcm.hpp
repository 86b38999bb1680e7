#pragma once

// Umbrella header for the numerical library. The HTTP layer lives in
// pcm/http_service.hpp and is not included here.

#include "pcm/core.hpp"
#include "pcm/gmm.hpp"
#include "pcm/em.hpp"
#include "pcm/measurement.hpp"
#include "pcm/analysis.hpp"
#include "pcm/io.hpp"
#include "pcm/report.hpp"
#include "pcm/selfcheck.hpp"
#include "pcm/session.hpp"
