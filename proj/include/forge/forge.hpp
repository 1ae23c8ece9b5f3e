#pragma once

#include "forge/composition_task.hpp"
#include "forge/dataset.hpp"
#include "forge/errors.hpp"
#include "forge/hash.hpp"
#include "forge/image.hpp"
#include "forge/lattice.hpp"
#include "forge/manifest.hpp"
#include "forge/planar.hpp"
#include "forge/png.hpp"
#include "forge/render.hpp"
#include "forge/rng.hpp"
#include "forge/rotation_task.hpp"
#include "forge/tiling_search.hpp"
