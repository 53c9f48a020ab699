#pragma once

#include "frct/arnold.hpp"
#include "frct/bench.hpp"
#include "frct/container.hpp"
#include "frct/error.hpp"
#include "frct/image.hpp"
#include "frct/keys.hpp"
#include "frct/metrics.hpp"
#include "frct/permute.hpp"
#include "frct/pipeline.hpp"
#include "frct/report.hpp"
#include "frct/spectral.hpp"
