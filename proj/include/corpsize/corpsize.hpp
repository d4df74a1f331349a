#pragma once

#include "corpsize/csv.hpp"
#include "corpsize/documents.hpp"
#include "corpsize/errors.hpp"
#include "corpsize/growth.hpp"
#include "corpsize/heaps.hpp"
#include "corpsize/manifest.hpp"
#include "corpsize/pipeline.hpp"
#include "corpsize/projection.hpp"
#include "corpsize/rng.hpp"
#include "corpsize/sampler.hpp"
#include "corpsize/svg_chart.hpp"
#include "corpsize/tokenizer.hpp"
#include "corpsize/unicode.hpp"
