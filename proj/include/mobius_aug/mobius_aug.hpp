#pragma once

#include "mobius_aug/admissibility.hpp"
#include "mobius_aug/augment.hpp"
#include "mobius_aug/batch.hpp"
#include "mobius_aug/dataset.hpp"
#include "mobius_aug/errors.hpp"
#include "mobius_aug/image.hpp"
#include "mobius_aug/manifest.hpp"
#include "mobius_aug/mobius.hpp"
#include "mobius_aug/png_io.hpp"
#include "mobius_aug/random.hpp"
#include "mobius_aug/raster.hpp"
#include "mobius_aug/sampler.hpp"
#include "mobius_aug/solver.hpp"
