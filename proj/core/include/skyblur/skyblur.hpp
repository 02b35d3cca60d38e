#pragma once

#include "skyblur/classify.hpp"
#include "skyblur/codec.hpp"
#include "skyblur/dft.hpp"
#include "skyblur/errors.hpp"
#include "skyblur/imaging.hpp"
#include "skyblur/metrics.hpp"
#include "skyblur/pipeline.hpp"
#include "skyblur/raster.hpp"
#include "skyblur/synth.hpp"
